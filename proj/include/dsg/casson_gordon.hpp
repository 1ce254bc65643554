#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "dsg/abelian.hpp"
#include "dsg/rational.hpp"

namespace dsg {

inline constexpr long long kMaxLensOrder = 100000;

/// Oriented lens space L(p, q), 0 < q < p, gcd(p, q) = 1.
struct LensSpace {
    long long p = 0;
    long long q = 0;
    int orientation = +1;

    void validate() const;
    bool operator==(const LensSpace&) const = default;
};

/// Oriented connected sum of lens spaces; empty sum is S^3. H_1 carries one
/// canonical Z_p generator (the meridian class) per summand.
struct LensSpaceSum {
    std::vector<LensSpace> summands;

    FiniteAbelianGroup h1() const;
    std::vector<BigInt> summand_orders() const;
    bool operator==(const LensSpaceSum&) const = default;
};

/// Character on H_1 of a lens space sum: generator of summand i maps to
/// values[i] in Z_modulus. Well defined iff modulus divides values[i] * p_i.
struct Character {
    BigInt modulus = 1;
    std::vector<BigInt> values;

    void validate_for(const LensSpaceSum& m) const;
};

/// sigma(L, chi_a) for the canonical generator, exact. Evaluates the cotangent
/// sum in quad precision with compensated summation and snaps to the nearest
/// rational with denominator dividing 12 p^2; the snapped value must actually
/// have denominator dividing p and residual < 1e-8, otherwise the convention
/// has drifted and we abort loudly rather than return a wrong value.
Rational cg_lens_sigma(const LensSpace& l, long long a);

/// sigma(M, phi), additive over connected sums; each summand evaluates the
/// restricted character rescaled to modulus p_i.
Rational cg_sigma(const LensSpaceSum& m, const Character& phi);

/// Full table for characters of modulus d | p: entries (a, sigma) with
/// a = k * (p/d), k = 0..d-1.
std::vector<std::pair<long long, Rational>> cg_table(const LensSpace& l, long long d);

/// Memoized positive-orientation table for L(p, q); index a = 0..p-1.
/// Safe for concurrent readers.
const std::vector<Rational>& lens_sigma_table(long long p, long long q);

/// Optional on-disk table cache: one file per (p, q, d), lines "a<TAB>num/den"
/// sorted by a, newline-terminated. Reads tolerate a missing file; writes go
/// through a temp file plus rename so concurrent readers never see a partial
/// table.
class CGTableCache {
public:
    explicit CGTableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path file_for(long long p, long long q, long long d) const;
    std::optional<std::vector<std::pair<long long, Rational>>> load(long long p, long long q,
                                                                    long long d) const;
    void store(long long p, long long q, long long d,
               const std::vector<std::pair<long long, Rational>>& table) const;

    /// Table via cache when available, computing and persisting otherwise.
    std::vector<std::pair<long long, Rational>> table(const LensSpace& l, long long d) const;

private:
    std::filesystem::path dir_;
};

/// Serialization used by both the cache files and the cg-table subcommand.
std::string format_cg_table(const std::vector<std::pair<long long, Rational>>& table);

}  // namespace dsg
