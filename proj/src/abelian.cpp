#include "dsg/abelian.hpp"

#include <algorithm>
#include <map>

namespace dsg {

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const std::vector<BigInt>& orders) {
    for (const BigInt& d : orders)
        if (d < 1) throw std::invalid_argument("cyclic order must be >= 1");
    // Smith form of the diagonal presentation yields the invariant-factor chain.
    IntMatrix diag(int(orders.size()), int(orders.size()));
    for (size_t i = 0; i < orders.size(); ++i) diag.at(int(i), int(i)) = orders[i];
    FiniteAbelianGroup g;
    for (const BigInt& d : smith_diagonal(diag))
        if (d > 1) g.inv_.push_back(d);
    return g;
}

BigInt FiniteAbelianGroup::order() const {
    BigInt n(1);
    for (const BigInt& d : inv_) n *= d;
    return n;
}

FiniteAbelianGroup FiniteAbelianGroup::direct_sum(const FiniteAbelianGroup& o) const {
    std::vector<BigInt> orders = inv_;
    orders.insert(orders.end(), o.inv_.begin(), o.inv_.end());
    return from_cyclic_orders(orders);
}

std::string FiniteAbelianGroup::to_string() const {
    if (inv_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < inv_.size(); ++i) s += (i ? "+Z" : "Z") + inv_[i].str();
    return s;
}

std::optional<FiniteAbelianGroup> cokernel(const IntMatrix& relations,
                                           const std::vector<BigInt>& ambient_orders) {
    int n = int(ambient_orders.size());
    if (relations.rows() > 0 && relations.cols() != n)
        throw std::invalid_argument("relation length does not match ambient generator count");
    int torsion_count = 0;
    for (const BigInt& d : ambient_orders)
        if (d != 0) ++torsion_count;
    IntMatrix full(relations.rows() + torsion_count, n);
    for (int i = 0; i < relations.rows(); ++i)
        for (int j = 0; j < n; ++j) full.at(i, j) = relations.at(i, j);
    int r = relations.rows();
    for (int j = 0; j < n; ++j)
        if (ambient_orders[size_t(j)] != 0) full.at(r++, j) = ambient_orders[size_t(j)];

    if (n == 0) return FiniteAbelianGroup{};
    std::vector<BigInt> diag = full.rows() > 0 ? smith_diagonal(full) : std::vector<BigInt>{};
    int rank = 0;
    std::vector<BigInt> factors;
    for (const BigInt& d : diag)
        if (d != 0) {
            ++rank;
            if (d > 1) factors.push_back(d);
        }
    if (rank < n) return std::nullopt;  // positive free rank
    return FiniteAbelianGroup::from_cyclic_orders(factors);
}

std::optional<FiniteAbelianGroup> cokernel(const IntMatrix& relations, const FreeExtension& ambient) {
    std::vector<BigInt> orders = ambient.torsion.invariant_factors();
    orders.insert(orders.end(), size_t(ambient.free_rank), BigInt(0));
    return cokernel(relations, orders);
}

int min_generators(const FiniteAbelianGroup& g) {
    return int(g.invariant_factors().size());
}

int xi_p(const FiniteAbelianGroup& g, const BigInt& p) {
    if (!is_prime(p)) throw std::invalid_argument("xi_p requires a prime p");
    int count = 0;
    for (const BigInt& d : g.invariant_factors())
        if (d % p == 0) ++count;
    return count;
}

int s_q(const FiniteAbelianGroup& torsion, int free_rank, const BigInt& p, int k) {
    if (!is_prime(p)) throw std::invalid_argument("s_q requires a prime p");
    if (k < 1) throw std::invalid_argument("s_q requires k >= 1");
    BigInt pk(1);
    for (int i = 0; i < k; ++i) pk *= p;
    int count = free_rank;
    for (const BigInt& d : torsion.invariant_factors())
        if (d % pk == 0) ++count;
    return count;
}

int s_q(const FreeExtension& a, const BigInt& p, int k) { return s_q(a.torsion, a.free_rank, p, k); }

bool is_quotient_of(const FiniteAbelianGroup& h, const FiniteAbelianGroup& g) {
    if (h.order() == 1) return true;
    if (g.order() % h.order() != 0) return false;
    // H is a quotient of G iff the s_q counts dominate for every prime power;
    // equivalently the p-primary exponent partitions nest.
    for (const BigInt& p : distinct_prime_factors(h.order())) {
        BigInt pk = p;
        for (int k = 1; pk <= h.exponent(); ++k, pk *= p) {
            if (s_q(h, 0, p, k) > s_q(g, 0, p, k)) return false;
        }
    }
    return true;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (BigInt f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

std::vector<BigInt> distinct_prime_factors(BigInt n) {
    std::vector<BigInt> out;
    if (n < 0) n = -n;
    for (BigInt f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

void partitions_of(int e, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (e == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(e, maxpart); part >= 1; --part) {
        cur.push_back(part);
        partitions_of(e - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<FiniteAbelianGroup> abelian_groups_of_order(const BigInt& n) {
    if (n < 1) throw std::invalid_argument("group order must be positive");
    if (n == 1) return {FiniteAbelianGroup{}};
    std::vector<std::pair<BigInt, int>> fact;
    BigInt m = n;
    for (const BigInt& p : distinct_prime_factors(n)) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        fact.emplace_back(p, e);
    }
    std::vector<std::vector<BigInt>> combos{{}};
    for (const auto& [p, e] : fact) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions_of(e, e, cur, parts);
        std::vector<std::vector<BigInt>> next;
        for (const auto& base : combos)
            for (const auto& part : parts) {
                std::vector<BigInt> orders = base;
                for (int exp : part) {
                    BigInt pe(1);
                    for (int i = 0; i < exp; ++i) pe *= p;
                    orders.push_back(pe);
                }
                next.push_back(std::move(orders));
            }
        combos = std::move(next);
    }
    std::vector<FiniteAbelianGroup> out;
    out.reserve(combos.size());
    for (const auto& orders : combos) out.push_back(FiniteAbelianGroup::from_cyclic_orders(orders));
    std::sort(out.begin(), out.end(), [](const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.invariant_factors() < b.invariant_factors();
    });
    return out;
}

bool Homomorphism::well_defined() const {
    for (size_t j = 0; j < domain_orders.size(); ++j) {
        if (domain_orders[j] == 0) continue;
        for (size_t i = 0; i < codomain_orders.size(); ++i) {
            BigInt v = domain_orders[j] * matrix.at(int(i), int(j));
            if (codomain_orders[i] == 0) {
                if (v != 0) return false;
            } else if (v % codomain_orders[i] != 0) {
                return false;
            }
        }
    }
    return true;
}

bool Homomorphism::is_surjective() const {
    // Surjective iff image rows plus the codomain order relations generate Z^k.
    int k = int(codomain_orders.size());
    int n = int(domain_orders.size());
    IntMatrix full(n + k, k);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < k; ++i) full.at(j, i) = matrix.at(i, j);
    for (int i = 0; i < k; ++i) full.at(n + i, i) = codomain_orders[i];
    auto q = cokernel(full, FreeExtension{{}, k});
    return q.has_value() && q->trivial();
}

std::vector<BigInt> Homomorphism::apply(const std::vector<BigInt>& x) const {
    if (x.size() != domain_orders.size()) throw std::invalid_argument("element size mismatch");
    std::vector<BigInt> y(codomain_orders.size(), BigInt(0));
    for (size_t i = 0; i < y.size(); ++i) {
        for (size_t j = 0; j < x.size(); ++j) y[i] += matrix.at(int(i), int(j)) * x[j];
        if (codomain_orders[i] != 0) y[i] = mod_floor(y[i], codomain_orders[i]);
    }
    return y;
}

HomEnumerator::HomEnumerator(std::vector<BigInt> domain_orders, std::vector<BigInt> codomain_orders)
    : dom_(std::move(domain_orders)), cod_(std::move(codomain_orders)), size_(1) {
    for (const BigInt& d : dom_)
        if (d < 1) throw std::invalid_argument("hom enumeration requires finite domain");
    for (const BigInt& e : cod_)
        if (e < 1) throw std::invalid_argument("hom enumeration requires finite codomain");
    radix_.reserve(dom_.size() * cod_.size());
    for (const BigInt& d : dom_)
        for (const BigInt& e : cod_) {
            BigInt g = boost::multiprecision::gcd(d, e);
            radix_.push_back(g);
            size_ *= g;
        }
}

Homomorphism HomEnumerator::at(const BigInt& index) const {
    Homomorphism h{dom_, cod_, IntMatrix(int(cod_.size()), int(dom_.size()))};
    BigInt rest = index;
    size_t r = 0;
    for (size_t j = 0; j < dom_.size(); ++j)
        for (size_t i = 0; i < cod_.size(); ++i, ++r) {
            BigInt t = rest % radix_[r];
            rest /= radix_[r];
            // Image coordinate: t * (e_i / gcd(d_j, e_i)) has order dividing d_j.
            h.matrix.at(int(i), int(j)) = t * (cod_[i] / radix_[r]);
        }
    return h;
}

void HomEnumerator::visit(bool surjective_only, long long cap,
                          const std::function<bool(const Homomorphism&)>& fn) const {
    if (size_ > cap)
        throw SearchSpaceTooLarge("homomorphism search space " + size_.str() +
                                  " exceeds cap " + std::to_string(cap));
    for (BigInt i = 0; i < size_; ++i) {
        Homomorphism h = at(i);
        if (surjective_only && !h.is_surjective()) continue;
        if (!fn(h)) return;
    }
}

std::vector<Homomorphism> enumerate_homomorphisms(const FiniteAbelianGroup& g,
                                                  const FiniteAbelianGroup& h,
                                                  bool surjective_only, long long cap) {
    HomEnumerator en(g.invariant_factors(), h.invariant_factors());
    std::vector<Homomorphism> out;
    en.visit(surjective_only, cap, [&](const Homomorphism& hom) {
        out.push_back(hom);
        return true;
    });
    return out;
}

}  // namespace dsg
