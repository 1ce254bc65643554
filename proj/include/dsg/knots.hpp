#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dsg/abelian.hpp"
#include "dsg/casson_gordon.hpp"
#include "dsg/int_matrix.hpp"

namespace dsg {

/// Seifert matrix: square, even size 2g, det(V - V^T) = 1.
struct SeifertMatrix {
    IntMatrix v;

    void validate() const;
    int genus() const { return v.rows() / 2; }
};

/// Two-bridge knot for the fraction p/q: p odd (even p gives a link).
struct TwoBridgeKnot {
    long long p = 0;
    long long q = 0;

    void validate() const;
    bool operator==(const TwoBridgeKnot&) const = default;
};

/// Connected sum of two-bridge and Seifert-matrix summands; empty = unknot.
/// Ribbonness is a user assertion, never computed.
struct KnotSpec {
    using Term = std::variant<TwoBridgeKnot, SeifertMatrix>;
    std::vector<Term> summands;
    std::optional<bool> ribbon;

    bool all_two_bridge() const;
    /// True iff every summand is the two-bridge knot p/q.
    bool is_pure_power_of(long long p, long long q) const;
};

/// p/q' = [2b_1, ..., 2b_{2g}] in the minus convention
/// a_1 - 1/(a_2 - 1/(...)), with q' = q if q is even and q - p otherwise.
/// Returns the halved entries b_i; the length is always even.
std::vector<long long> even_continued_fraction(long long p, long long q);

/// Banded Seifert matrix of the plumbing along the even continued fraction:
/// diagonal b_i, superdiagonal ones. Output satisfies det(V - V^T) = 1 and
/// |det(V + V^T)| = p.
SeifertMatrix seifert_from_two_bridge(const TwoBridgeKnot& k);

/// Double branched cover data. For all-two-bridge specs the full lens space
/// sum is available; Seifert terms only determine H_1 (cokernel of V + V^T),
/// so theta_2/theta_3 are unavailable for such specs.
struct BranchedCover {
    std::optional<LensSpaceSum> manifold;
    FiniteAbelianGroup h1;
};

BranchedCover branched_double_cover(const KnotSpec& k);

/// Signature of a symmetric integer matrix by exact congruence
/// diagonalization over Q.
int signature_of_symmetric(const IntMatrix& m);

/// det(V - tV^T) normalized by t^{-g}: symmetric Laurent polynomial with
/// Delta(1) = 1. coeffs[i] is the coefficient of t^{i - genus}.
struct AlexanderPolynomial {
    std::vector<BigInt> coeffs;
    int genus = 0;

    int degree() const;          // top exponent of the symmetric normalization
    BigInt eval_minus_one() const;
};

AlexanderPolynomial alexander_polynomial(const SeifertMatrix& v);

struct KnotInvariants {
    long long signature = 0;
    BigInt determinant = 1;
    FiniteAbelianGroup h1_cover;
    int alexander_degree = 0;
};

KnotInvariants knot_invariants(const KnotSpec& k);

/// Genus-bound fields of the report. superslice_lower holds in both smooth
/// and topological categories; the upper bounds are topological. The exact
/// value is emitted only where Alexander degree 1 pins it.
struct GenusBounds {
    int superslice_lower = 0;
    int superslice_top_upper = 0;
    std::optional<int> superslice_top_exact;
    std::optional<int> double_slice_top_upper;  // ribbon knots only
};

GenusBounds genus_bound_report(const KnotSpec& k, const KnotInvariants& inv);

}  // namespace dsg
