#include "dsg/knots.hpp"

#include <numeric>

namespace dsg {

void SeifertMatrix::validate() const {
    if (v.rows() != v.cols()) throw std::invalid_argument("Seifert matrix must be square");
    if (v.rows() % 2 != 0) throw std::invalid_argument("Seifert matrix must have even size");
    IntMatrix skew = v;
    IntMatrix vt = v.transpose();
    for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < v.cols(); ++j) skew.at(i, j) -= vt.at(i, j);
    if (determinant(skew) != 1)
        throw std::invalid_argument("Seifert matrix must satisfy det(V - V^T) = 1");
}

void TwoBridgeKnot::validate() const {
    if (p <= 1 || p > kMaxLensOrder) throw std::invalid_argument("two-bridge p out of range");
    if (p % 2 == 0) throw std::invalid_argument("two-bridge p must be odd");
    if (q <= 0 || q >= p) throw std::invalid_argument("two-bridge q must satisfy 0 < q < p");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("two-bridge p/q must be reduced");
}

bool KnotSpec::all_two_bridge() const {
    for (const Term& t : summands)
        if (!std::holds_alternative<TwoBridgeKnot>(t)) return false;
    return true;
}

bool KnotSpec::is_pure_power_of(long long p, long long q) const {
    if (summands.empty()) return false;
    for (const Term& t : summands) {
        const auto* tb = std::get_if<TwoBridgeKnot>(&t);
        if (!tb || tb->p != p || tb->q != q) return false;
    }
    return true;
}

std::vector<long long> even_continued_fraction(long long p, long long q) {
    TwoBridgeKnot{p, q}.validate();
    BigInt num(p);
    BigInt den(q % 2 == 0 ? q : q - p);
    std::vector<long long> halves;
    for (;;) {
        // Nearest even integer to num/den; ties cannot occur since the value
        // is never an odd integer along this recursion.
        BigInt a = 2 * floor_div(num + den, 2 * den);
        halves.push_back((a / 2).convert_to<long long>());
        BigInt next_den = a * den - num;
        if (next_den == 0) break;
        num = den;
        den = next_den;
    }
    if (halves.size() % 2 != 0)
        throw std::logic_error("even continued fraction expansion has odd length");
    for (long long b : halves)
        if (b == 0) throw std::logic_error("even continued fraction produced a zero entry");
    return halves;
}

SeifertMatrix seifert_from_two_bridge(const TwoBridgeKnot& k) {
    std::vector<long long> b = even_continued_fraction(k.p, k.q);
    int n = int(b.size());
    SeifertMatrix s{IntMatrix(n, n)};
    for (int i = 0; i < n; ++i) {
        s.v.at(i, i) = b[size_t(i)];
        if (i + 1 < n) s.v.at(i, i + 1) = 1;
    }
    s.validate();
    IntMatrix sym = s.v;
    IntMatrix vt = s.v.transpose();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sym.at(i, j) += vt.at(i, j);
    BigInt det = determinant(sym);
    if (det != k.p && det != -k.p)
        throw std::logic_error("two-bridge Seifert matrix has wrong determinant");
    return s;
}

BranchedCover branched_double_cover(const KnotSpec& k) {
    BranchedCover cover;
    std::vector<BigInt> orders;
    if (k.all_two_bridge()) {
        LensSpaceSum sum;
        for (const auto& t : k.summands) {
            const auto& tb = std::get<TwoBridgeKnot>(t);
            tb.validate();
            sum.summands.push_back(LensSpace{tb.p, tb.q, +1});
            orders.emplace_back(tb.p);
        }
        cover.manifold = std::move(sum);
        cover.h1 = FiniteAbelianGroup::from_cyclic_orders(orders);
        return cover;
    }
    FiniteAbelianGroup h1;
    for (const auto& t : k.summands) {
        if (const auto* tb = std::get_if<TwoBridgeKnot>(&t)) {
            h1 = h1.direct_sum(FiniteAbelianGroup::from_cyclic_orders({BigInt(tb->p)}));
            continue;
        }
        const auto& sm = std::get<SeifertMatrix>(t);
        sm.validate();
        IntMatrix sym = sm.v;
        IntMatrix vt = sm.v.transpose();
        for (int i = 0; i < sym.rows(); ++i)
            for (int j = 0; j < sym.cols(); ++j) sym.at(i, j) += vt.at(i, j);
        auto q = cokernel(sym, FreeExtension{{}, sym.cols()});
        if (!q) throw std::logic_error("branched double cover has infinite H_1");
        h1 = h1.direct_sum(*q);
    }
    cover.h1 = std::move(h1);
    return cover;
}

int signature_of_symmetric(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("signature of non-square matrix");
    int n = m.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (m.at(i, j) != m.at(j, i))
                throw std::invalid_argument("signature requires a symmetric matrix");
            a[i][j] = Rational(m.at(i, j));
        }
    std::vector<int> live(n);
    for (int i = 0; i < n; ++i) live[i] = i;
    int sig = 0;
    while (!live.empty()) {
        int pivot = -1;
        for (int idx : live)
            if (a[idx][idx].sign() != 0) { pivot = idx; break; }
        if (pivot < 0) {
            // All diagonal entries vanish; a nonzero off-diagonal pair is
            // hyperbolic. Symmetrically add one row/column into the other to
            // expose a nonzero diagonal entry.
            int bi = -1, bj = -1;
            for (size_t x = 0; x < live.size() && bi < 0; ++x)
                for (size_t y = x + 1; y < live.size(); ++y)
                    if (a[live[x]][live[y]].sign() != 0) {
                        bi = live[x];
                        bj = live[y];
                        break;
                    }
            if (bi < 0) break;  // zero form on the rest
            for (int k = 0; k < n; ++k) a[bi][k] += a[bj][k];
            for (int k = 0; k < n; ++k) a[k][bi] += a[k][bj];
            continue;
        }
        Rational d = a[pivot][pivot];
        sig += d.sign();
        std::vector<int> rest;
        rest.reserve(live.size() - 1);
        for (int idx : live)
            if (idx != pivot) rest.push_back(idx);
        for (int i : rest) {
            Rational f = a[i][pivot] / d;
            if (f.sign() == 0) continue;
            for (int j : rest) a[i][j] -= f * a[pivot][j];
        }
        for (int i : rest) {
            a[i][pivot] = Rational(0);
            a[pivot][i] = Rational(0);
        }
        live = std::move(rest);
    }
    return sig;
}

int AlexanderPolynomial::degree() const {
    for (int i = int(coeffs.size()) - 1; i >= 0; --i)
        if (coeffs[size_t(i)] != 0) return i - genus;
    return 0;
}

BigInt AlexanderPolynomial::eval_minus_one() const {
    // coeffs[i] multiplies t^{i - genus}; at t = -1 the term carries (-1)^{i+genus}.
    BigInt v(0);
    for (size_t i = 0; i < coeffs.size(); ++i)
        v += ((genus + int(i)) % 2 == 0 ? coeffs[i] : -coeffs[i]);
    return v;
}

AlexanderPolynomial alexander_polynomial(const SeifertMatrix& sm) {
    sm.validate();
    int n = sm.v.rows();
    IntMatrix vt = sm.v.transpose();
    // det(V - tV^T) has degree <= n; interpolate from n+1 exact evaluations.
    std::vector<BigInt> xs, ys;
    for (int t = 0; t <= n; ++t) {
        IntMatrix a = sm.v;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) -= BigInt(t) * vt.at(i, j);
        xs.emplace_back(t);
        ys.push_back(determinant(a));
    }
    std::vector<Rational> newton(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) newton[i] = Rational(ys[i]);
    std::vector<Rational> coef;
    coef.push_back(newton[0]);
    for (size_t level = 1; level < xs.size(); ++level) {
        for (size_t i = 0; i + level < xs.size(); ++i)
            newton[i] = (newton[i + 1] - newton[i]) / Rational(xs[i + level] - xs[i]);
        coef.push_back(newton[0]);
    }
    // Expand Newton form to monomial coefficients.
    std::vector<Rational> poly(xs.size(), Rational(0));
    std::vector<Rational> basis{Rational(1)};  // product (t - x_0)...(t - x_{k-1})
    for (size_t k = 0; k < coef.size(); ++k) {
        for (size_t i = 0; i < basis.size(); ++i) poly[i] += coef[k] * basis[i];
        if (k + 1 < coef.size()) {
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] += basis[i];
                next[i] -= basis[i] * Rational(xs[k]);
            }
            basis = std::move(next);
        }
    }
    AlexanderPolynomial out;
    out.genus = n / 2;
    out.coeffs.resize(size_t(n) + 1);
    for (size_t i = 0; i <= size_t(n); ++i) {
        if (!poly[i].is_integer())
            throw std::logic_error("Alexander interpolation produced non-integer coefficient");
        out.coeffs[i] = poly[i].num();
    }
    // Symmetry c_k = c_{n-k} and Delta(1) = det(V - V^T) = 1.
    BigInt at_one(0);
    for (const BigInt& c : out.coeffs) at_one += c;
    if (at_one != 1) throw std::logic_error("Alexander normalization failed: Delta(1) != 1");
    for (size_t i = 0; i <= size_t(n); ++i)
        if (out.coeffs[i] != out.coeffs[size_t(n) - i])
            throw std::logic_error("Alexander polynomial is not symmetric");
    return out;
}

namespace {

IntMatrix symmetrization(const SeifertMatrix& sm) {
    IntMatrix sym = sm.v;
    IntMatrix vt = sm.v.transpose();
    for (int i = 0; i < sym.rows(); ++i)
        for (int j = 0; j < sym.cols(); ++j) sym.at(i, j) += vt.at(i, j);
    return sym;
}

SeifertMatrix seifert_of_term(const KnotSpec::Term& t) {
    if (const auto* tb = std::get_if<TwoBridgeKnot>(&t)) return seifert_from_two_bridge(*tb);
    return std::get<SeifertMatrix>(t);
}

}  // namespace

KnotInvariants knot_invariants(const KnotSpec& k) {
    KnotInvariants inv;
    for (const auto& term : k.summands) {
        SeifertMatrix sm = seifert_of_term(term);
        sm.validate();
        IntMatrix sym = symmetrization(sm);
        inv.signature += signature_of_symmetric(sym);
        BigInt det = determinant(sym);
        inv.determinant *= (det < 0 ? -det : det);
        inv.alexander_degree += alexander_polynomial(sm).degree();
    }
    inv.h1_cover = branched_double_cover(k).h1;
    if (inv.determinant != inv.h1_cover.order())
        throw std::logic_error("determinant disagrees with |H_1| of the double cover");
    if (inv.signature % 2 != 0) throw std::logic_error("knot signature must be even");
    return inv;
}

GenusBounds genus_bound_report(const KnotSpec& k, const KnotInvariants& inv) {
    GenusBounds gb;
    int mu = min_generators(inv.h1_cover);
    gb.superslice_lower = (mu + 1) / 2;
    gb.superslice_top_upper = inv.alexander_degree;
    if (inv.alexander_degree == 1) gb.superslice_top_exact = 1;
    if (k.ribbon.value_or(false)) gb.double_slice_top_upper = inv.alexander_degree;
    if (gb.superslice_lower > gb.superslice_top_upper)
        throw std::logic_error("superslice lower bound exceeds the Alexander-degree upper bound");
    return gb;
}

}  // namespace dsg
