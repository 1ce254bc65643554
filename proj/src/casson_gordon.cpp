#include "dsg/casson_gordon.hpp"

#include <quadmath.h>

#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace dsg {

void LensSpace::validate() const {
    if (p <= 1 || p > kMaxLensOrder) throw std::invalid_argument("lens space requires 1 < p <= 1e5");
    if (q <= 0 || q >= p) throw std::invalid_argument("lens space requires 0 < q < p");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("lens space requires gcd(p, q) = 1");
    if (orientation != 1 && orientation != -1)
        throw std::invalid_argument("orientation must be +1 or -1");
}

FiniteAbelianGroup LensSpaceSum::h1() const {
    return FiniteAbelianGroup::from_cyclic_orders(summand_orders());
}

std::vector<BigInt> LensSpaceSum::summand_orders() const {
    std::vector<BigInt> orders;
    orders.reserve(summands.size());
    for (const LensSpace& l : summands) orders.emplace_back(l.p);
    return orders;
}

void Character::validate_for(const LensSpaceSum& m) const {
    if (modulus < 1) throw std::invalid_argument("character modulus must be >= 1");
    if (values.size() != m.summands.size())
        throw std::invalid_argument("character needs one value per summand");
    for (size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] >= modulus)
            throw std::invalid_argument("character value out of range");
        if ((values[i] * m.summands[i].p) % modulus != 0)
            throw std::invalid_argument("character not well defined on H_1 (modulus incompatible)");
    }
}

namespace {

const __float128 kPi = acosq(__float128(-1));

// -(2/p) sum_{k=1}^{p-1} cot(pi k q / p) cot(pi k / p) sin^2(pi k a / p),
// Kahan-compensated; angle arguments reduced mod p before multiplying by pi/p.
__float128 cotangent_sum(long long p, long long q, long long a) {
    __float128 sum = 0, comp = 0;
    const __float128 step = kPi / __float128(p);
    for (long long k = 1; k < p; ++k) {
        long long kq = (k * q) % p;
        long long ka = (k * a) % p;
        if (kq == 0 || ka == 0) continue;  // cot pole cannot occur (gcd(q,p)=1); sin term vanishes
        __float128 s = sinq(step * __float128(ka));
        __float128 term = (cosq(step * __float128(kq)) / sinq(step * __float128(kq))) *
                          (cosq(step * __float128(k)) / sinq(step * __float128(k))) * s * s;
        __float128 y = term - comp;
        __float128 t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return __float128(-2) * sum / __float128(p);
}

Rational snap_to_rational(__float128 v, long long p) {
    const long long denom = 12 * p * p;
    __float128 scaled = v * __float128(denom);
    long long nearest = llroundq(scaled);
    __float128 resid = fabsq(v - __float128(nearest) / __float128(denom));
    if (resid > __float128(1e-8))
        throw std::logic_error("Casson-Gordon snapping failure: no admissible rational near value");
    Rational r(BigInt(nearest), BigInt(denom));
    if (p % r.den() != 0)
        throw std::logic_error("Casson-Gordon snapping failure: denominator does not divide p");
    return r;
}

std::mutex table_mutex;
std::map<std::pair<long long, long long>, std::vector<Rational>> table_memo;

}  // namespace

const std::vector<Rational>& lens_sigma_table(long long p, long long q) {
    std::scoped_lock lock(table_mutex);
    auto key = std::make_pair(p, q);
    auto it = table_memo.find(key);
    if (it != table_memo.end()) return it->second;
    std::vector<Rational> table(size_t(p));
    for (long long a = 1; a < p; ++a) table[size_t(a)] = snap_to_rational(cotangent_sum(p, q, a), p);
    return table_memo.emplace(key, std::move(table)).first->second;
}

Rational cg_lens_sigma(const LensSpace& l, long long a) {
    l.validate();
    if (a < 0 || a >= l.p) throw std::invalid_argument("character residue out of range");
    if (a == 0) return Rational(0);  // trivial character, by definition and by the vanishing sum
    Rational v = lens_sigma_table(l.p, l.q)[size_t(a)];
    return l.orientation > 0 ? v : -v;
}

Rational cg_sigma(const LensSpaceSum& m, const Character& phi) {
    phi.validate_for(m);
    Rational total(0);
    for (size_t i = 0; i < m.summands.size(); ++i) {
        const LensSpace& l = m.summands[i];
        // Rescale the Z_modulus value to the canonical Z_p residue: b = a*p/modulus
        // (exact by well-definedness).
        BigInt b = mod_floor(phi.values[i] * l.p / phi.modulus, BigInt(l.p));
        total += cg_lens_sigma(l, b.convert_to<long long>());
    }
    return total;
}

std::vector<std::pair<long long, Rational>> cg_table(const LensSpace& l, long long d) {
    l.validate();
    if (d < 1 || l.p % d != 0) throw std::invalid_argument("table modulus must divide p");
    std::vector<std::pair<long long, Rational>> out;
    out.reserve(size_t(d));
    long long stride = l.p / d;
    for (long long k = 0; k < d; ++k) out.emplace_back(k * stride, cg_lens_sigma(l, k * stride));
    return out;
}

std::string format_cg_table(const std::vector<std::pair<long long, Rational>>& table) {
    std::string s;
    for (const auto& [a, v] : table) {
        s += std::to_string(a);
        s += '\t';
        s += v.to_fraction_string();
        s += '\n';
    }
    return s;
}

std::filesystem::path CGTableCache::file_for(long long p, long long q, long long d) const {
    return dir_ / ("cg_" + std::to_string(p) + "_" + std::to_string(q) + "_" + std::to_string(d) +
                   ".tsv");
}

std::optional<std::vector<std::pair<long long, Rational>>> CGTableCache::load(long long p,
                                                                              long long q,
                                                                              long long d) const {
    std::ifstream in(file_for(p, q, d));
    if (!in) return std::nullopt;
    std::vector<std::pair<long long, Rational>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) return std::nullopt;  // corrupt; recompute
        try {
            table.emplace_back(std::stoll(line.substr(0, tab)),
                               Rational::from_string(line.substr(tab + 1)));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (table.size() != size_t(d)) return std::nullopt;
    return table;
}

void CGTableCache::store(long long p, long long q, long long d,
                         const std::vector<std::pair<long long, Rational>>& table) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    auto target = file_for(p, q, d);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return;  // cache is best effort
        out << format_cg_table(table);
    }
    std::filesystem::rename(tmp, target, ec);
}

std::vector<std::pair<long long, Rational>> CGTableCache::table(const LensSpace& l,
                                                                long long d) const {
    l.validate();
    if (l.orientation > 0) {
        if (auto cached = load(l.p, l.q, d)) return *cached;
        auto computed = cg_table(l, d);
        store(l.p, l.q, d, computed);
        return computed;
    }
    LensSpace pos{l.p, l.q, +1};
    auto table = this->table(pos, d);
    for (auto& [a, v] : table) v = -v;
    return table;
}

}  // namespace dsg
