#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dsg/int_matrix.hpp"
#include "dsg/snf.hpp"

namespace dsg {

/// Thrown when an enumeration would exceed its configured cap. Callers either
/// widen the cap or report the computation as incomplete; results are never
/// silently truncated.
class SearchSpaceTooLarge : public std::runtime_error {
public:
    explicit SearchSpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// Finite abelian group in canonical invariant-factor form:
/// factors d_1 | d_2 | ... | d_k, every d_i >= 2. Isomorphism is equality.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;  // trivial group

    /// Normalizes an arbitrary list of cyclic orders (each >= 1) to canonical form.
    static FiniteAbelianGroup from_cyclic_orders(const std::vector<BigInt>& orders);

    const std::vector<BigInt>& invariant_factors() const { return inv_; }
    bool trivial() const { return inv_.empty(); }
    BigInt order() const;
    BigInt exponent() const { return inv_.empty() ? BigInt(1) : inv_.back(); }

    FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& o) const;

    bool operator==(const FiniteAbelianGroup& o) const = default;

    std::string to_string() const;  // e.g. "Z3+Z9", "0"

private:
    std::vector<BigInt> inv_;
};

/// torsion + Z^free_rank, the ambient groups of relation quotients.
struct FreeExtension {
    FiniteAbelianGroup torsion;
    int free_rank = 0;

    int generator_count() const {
        return int(torsion.invariant_factors().size()) + free_rank;
    }
};

/// Quotient of `ambient` by the subgroup generated by the rows of `relations`
/// (coordinates: torsion generators first, then free generators).
/// nullopt means the quotient has positive free rank.
std::optional<FiniteAbelianGroup> cokernel(const IntMatrix& relations, const FreeExtension& ambient);

/// Same with generator orders in arbitrary positions (0 = free generator).
std::optional<FiniteAbelianGroup> cokernel(const IntMatrix& relations,
                                           const std::vector<BigInt>& ambient_orders);

int min_generators(const FiniteAbelianGroup& g);

/// dim_{Z_p} (G tensor Z_p): number of invariant factors divisible by p.
int xi_p(const FiniteAbelianGroup& g, const BigInt& p);

/// dim over F_p of p^{k-1}A / p^k A for A = torsion + Z^free_rank:
/// (# invariant factors divisible by p^k) + free_rank. Monotone under quotients.
int s_q(const FiniteAbelianGroup& torsion, int free_rank, const BigInt& p, int k);
int s_q(const FreeExtension& a, const BigInt& p, int k);

/// True iff h is (isomorphic to) a quotient of g.
bool is_quotient_of(const FiniteAbelianGroup& h, const FiniteAbelianGroup& g);

bool is_prime(const BigInt& n);
std::vector<BigInt> distinct_prime_factors(BigInt n);

/// All isomorphism classes of abelian groups of order n, deterministic order.
std::vector<FiniteAbelianGroup> abelian_groups_of_order(const BigInt& n);

/// Homomorphism between summand-presented abelian groups. Column j of
/// `matrix` is the image of domain generator j in codomain coordinates;
/// order 0 marks a free (infinite-order) generator.
struct Homomorphism {
    std::vector<BigInt> domain_orders;
    std::vector<BigInt> codomain_orders;
    IntMatrix matrix;

    /// Compatibility: o_j * column_j vanishes in the codomain.
    bool well_defined() const;
    bool is_surjective() const;
    /// Image of element x (domain coordinates), reduced mod codomain orders.
    std::vector<BigInt> apply(const std::vector<BigInt>& x) const;
};

inline constexpr long long kDefaultHomCap = 100'000'000;

/// Deterministic, random-access enumeration of Hom(domain, codomain) between
/// finite summand presentations. Index i decodes to a unique homomorphism;
/// partitioning index ranges across workers keeps results schedule independent.
class HomEnumerator {
public:
    HomEnumerator(std::vector<BigInt> domain_orders, std::vector<BigInt> codomain_orders);

    const BigInt& size() const { return size_; }
    Homomorphism at(const BigInt& index) const;

    /// Visits all homomorphisms (or only surjections); throws SearchSpaceTooLarge
    /// if the declared size exceeds `cap`. Returning false stops iteration.
    void visit(bool surjective_only, long long cap,
               const std::function<bool(const Homomorphism&)>& fn) const;

private:
    std::vector<BigInt> dom_, cod_;
    std::vector<BigInt> radix_;  // per (j,i): gcd(dom_j, cod_i)
    BigInt size_;
};

/// Spec-level stream: every homomorphism G -> H exactly once; with
/// surjective_only, exactly the surjections.
std::vector<Homomorphism> enumerate_homomorphisms(const FiniteAbelianGroup& g,
                                                  const FiniteAbelianGroup& h,
                                                  bool surjective_only,
                                                  long long cap = kDefaultHomCap);

}  // namespace dsg
