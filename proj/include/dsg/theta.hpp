#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsg/abelian.hpp"
#include "dsg/casson_gordon.hpp"
#include "dsg/knots.hpp"
#include "dsg/rational.hpp"

namespace dsg {

struct ThetaCaps {
    long long max_pairs = 10000;
    long long max_homs = kDefaultHomCap;
    int max_n = 3;                       // bound on n_1 + n_2 in the certificate search
    long long entry_bound = 0;           // 0: default to exponent(G); see README
    long long max_lattices = 2'000'000;  // certificate search work cap per (n_1, n_2)
    int threads = 1;
};

/// Candidate pair (G_1, G_2) surviving the necessary admissibility filters:
/// |G_i|^2 divides |G| and G_1 + G_2 is a quotient of G. Every extendable
/// pair passes both, so minima over candidates bound minima over extendable
/// pairs from below.
struct PairCandidate {
    FiniteAbelianGroup g1, g2;
    bool order_ok = false;
    bool component_quotient_ok = false;
    bool joint_quotient_ok = false;
};

std::vector<PairCandidate> candidate_pairs(const FiniteAbelianGroup& g, const ThetaCaps& caps = {});

/// Counting lower bound for theta_1: max over prime powers p^k <= exponent(G)
/// of ceil((s_q(G) - s_q(G_1 + G_2)) / 2), floored at 0. Sound because s_q is
/// monotone under quotients and any admissible extension presents G as a
/// quotient of G_1 + G_2 + Z^{2(n_1+n_2)}.
Rational theta1_lower(const FiniteAbelianGroup& g, const FiniteAbelianGroup& g1,
                      const FiniteAbelianGroup& g2);

/// Explicit witness for admissibility: n_1, n_2 and 2(n_1+n_2) relation pairs
/// (a^1_j, a^2_j), a^i_j in G_i + Z^{2n_i} (torsion coordinates first).
struct AdmissibilityCertificate {
    int n1 = 0, n2 = 0;
    std::vector<std::vector<BigInt>> side1, side2;

    /// Recomputes the three cokernels that define admissibility.
    bool verify(const FiniteAbelianGroup& g, const FiniteAbelianGroup& g1,
                const FiniteAbelianGroup& g2) const;
};

struct BoundInterval {
    Rational lower;
    std::optional<Rational> upper;  // nullopt: no certificate found within caps
    std::string method;
    std::optional<AdmissibilityCertificate> certificate;
    bool search_capped = false;  // a work cap stopped some exhaustion level
};

/// Certificate search for theta_1(G, G_1, G_2). For each n_1 + n_2 <= max_n
/// the search over relation subgroups is complete (it enumerates all sublattice
/// candidates, not just bounded entries), so a missing certificate at level s
/// genuinely excludes admissibility at s unless search_capped is set.
BoundInterval theta1_search(const FiniteAbelianGroup& g, const FiniteAbelianGroup& g1,
                            const FiniteAbelianGroup& g2, const ThetaCaps& caps = {});

/// Witness characters for a Casson-Gordon bound value.
struct CGWitness {
    BigInt prime = 0;
    BigInt modulus1 = 1, modulus2 = 1;
    std::vector<BigInt> j1, j2;  // characters on G_1, G_2 coordinates
    Rational value;
};

/// theta_2(Y, G_1, G_2): (1/2) min over surjections iota of the max over
/// primes p and prime-power characters phi_i factoring through G_i of
/// |sigma(Y,phi_1) - sigma(Y,phi_2)| - xi_p(G_1 + G_2); trivial characters are
/// admitted, so the max is never negative.
Rational theta2_pair(const LensSpaceSum& y, const FiniteAbelianGroup& g1,
                     const FiniteAbelianGroup& g2, const ThetaCaps& caps = {},
                     CGWitness* witness = nullptr);

/// theta_3(K, G_1, G_2) for a knot with all-two-bridge cover y and signature
/// sigma_k: per-side max(0, |sigma(Y,phi_i) + sigma(K)| - xi_p(G_i)), halved.
Rational theta3_pair(const LensSpaceSum& y, long long sigma_k, const FiniteAbelianGroup& g1,
                     const FiniteAbelianGroup& g2, const ThetaCaps& caps = {},
                     CGWitness* witness = nullptr);
Rational theta3_pair(const KnotSpec& k, const FiniteAbelianGroup& g1,
                     const FiniteAbelianGroup& g2, const ThetaCaps& caps = {});

struct PairEvaluation {
    FiniteAbelianGroup g1, g2;
    Rational theta1_count;
    std::optional<Rational> cg_value;  // theta_2 or theta_3 for the pair
    bool cg_capped = false;            // enumeration cap hit; pair degraded to counting
    Rational combined;
};

struct ThetaOutcome {
    Rational value;
    BigInt ceiling;
    std::string method;  // "enumeration", "counting-only" or "closed-form"
    bool complete = false;
    bool manifold_available = false;
    std::vector<PairEvaluation> pair_table;
    std::optional<size_t> argmin;
    std::optional<CGWitness> witness;
};

/// theta(K) lower bound: min over candidate pairs of max(theta_1 counting
/// bound, theta_3). Lower-bounds the double slice genus.
ThetaOutcome theta_lower(const BranchedCover& cover, long long sigma_k, const ThetaCaps& caps = {});
ThetaOutcome theta_lower(const KnotSpec& k, const ThetaCaps& caps = {});

/// Theta(Y) lower bound: as theta_lower with theta_2; lower-bounds the
/// embedding number of Y.
ThetaOutcome theta_cap(const LensSpaceSum& y, const ThetaCaps& caps = {});

/// Surjection Z_9^n -> Z_9^m as an m x n matrix mod 9.
struct SurjectionMatrix {
    int m = 0, n = 0;
    std::vector<int> e;

    SurjectionMatrix() = default;
    SurjectionMatrix(int m_, int n_) : m(m_), n(n_), e(size_t(m_) * n_, 0) {}
    int& at(int i, int j) { return e[size_t(i) * n + j]; }
    int at(int i, int j) const { return e[size_t(i) * n + j]; }
    bool is_surjective() const;  // mod-3 reduction has rank m
};

/// Basis reduction of a surjection to block form [I_m | A]: returns reduced =
/// u * s * perm with u invertible mod 9 and perm a column permutation. Follows
/// the pivot-rescale-swap-clear loop row by row; a row with no unit entry
/// means the input was not surjective.
struct LemmaA2Result {
    SurjectionMatrix reduced;
    std::vector<int> u;     // m x m mod 9, row major
    std::vector<int> perm;  // perm[j] = source column of output column j
};

LemmaA2Result lemma_a2_reduce(const SurjectionMatrix& s);

/// Character selection for #_n L(9,4): j in {(2,...,2), (6,...,6)} chosen by
/// counting -1/9 entries of the probe vector H(2,...,2); achieves
/// sigma(Y, j o s) >= (10/9) m. h_vector records the probe.
struct CharacterChoice {
    std::vector<int> j;
    Rational sigma_achieved;
    std::vector<Rational> h_vector;
};

CharacterChoice prop_a_character(const SurjectionMatrix& s);

/// Closed-form theta lower bound for the connected sum of N copies of the
/// 9/4 two-bridge knot: min over l = 0..N of
/// max(ceil((N-l)/2), max(0, ((10/9)ceil(l/2) - (ceil(l/2) + N - l)) / 2)).
Rational main_theorem_bound(long long n_summands);

}  // namespace dsg
