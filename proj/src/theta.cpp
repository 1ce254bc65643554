#include "dsg/theta.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace dsg {

namespace {

std::vector<BigInt> sorted_divisors(const BigInt& n) {
    std::vector<BigInt> small, large;
    for (BigInt d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<PairCandidate> candidate_pairs(const FiniteAbelianGroup& g, const ThetaCaps& caps) {
    BigInt order = g.order();
    std::vector<FiniteAbelianGroup> components;
    for (const BigInt& m : sorted_divisors(order)) {
        if (order % (m * m) != 0) continue;  // |G_i|^2 must divide |G|
        for (const FiniteAbelianGroup& h : abelian_groups_of_order(m))
            if (is_quotient_of(h, g)) components.push_back(h);
    }
    std::vector<PairCandidate> out;
    for (const FiniteAbelianGroup& g1 : components)
        for (const FiniteAbelianGroup& g2 : components) {
            PairCandidate c{g1, g2, true, true, false};
            c.joint_quotient_ok = is_quotient_of(g1.direct_sum(g2), g);
            if (!c.joint_quotient_ok) continue;
            out.push_back(std::move(c));
            if (long long(out.size()) > caps.max_pairs)
                throw SearchSpaceTooLarge("candidate pair count exceeds cap " +
                                          std::to_string(caps.max_pairs));
        }
    return out;
}

Rational theta1_lower(const FiniteAbelianGroup& g, const FiniteAbelianGroup& g1,
                      const FiniteAbelianGroup& g2) {
    FiniteAbelianGroup pair = g1.direct_sum(g2);
    BigInt best(0);
    for (const BigInt& p : distinct_prime_factors(g.order())) {
        BigInt pk = p;
        for (int k = 1; pk <= g.exponent(); ++k, pk *= p) {
            int gap = s_q(g, 0, p, k) - s_q(pair, 0, p, k);
            if (gap > 0) best = std::max(best, BigInt((gap + 1) / 2));
        }
    }
    return Rational(best);
}

namespace {

std::vector<BigInt> ambient_orders_of(const FiniteAbelianGroup& torsion, int free_rank) {
    std::vector<BigInt> orders = torsion.invariant_factors();
    orders.insert(orders.end(), size_t(free_rank), BigInt(0));
    return orders;
}

IntMatrix rows_matrix(const std::vector<std::vector<BigInt>>& rows, int cols) {
    IntMatrix m(int(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (int(rows[i].size()) != cols) throw std::invalid_argument("relation length mismatch");
        for (int j = 0; j < cols; ++j) m.at(int(i), j) = rows[i][j];
    }
    return m;
}

}  // namespace

bool AdmissibilityCertificate::verify(const FiniteAbelianGroup& g, const FiniteAbelianGroup& g1,
                                      const FiniteAbelianGroup& g2) const {
    size_t count = size_t(2 * (n1 + n2));
    if (side1.size() != count || side2.size() != count) return false;
    std::vector<BigInt> orders1 = ambient_orders_of(g1, 2 * n1);
    std::vector<BigInt> orders2 = ambient_orders_of(g2, 2 * n2);

    auto q1 = cokernel(rows_matrix(side1, int(orders1.size())), orders1);
    if (!q1 || !(*q1 == g2)) return false;
    auto q2 = cokernel(rows_matrix(side2, int(orders2.size())), orders2);
    if (!q2 || !(*q2 == g1)) return false;

    std::vector<BigInt> paired_orders = orders1;
    paired_orders.insert(paired_orders.end(), orders2.begin(), orders2.end());
    std::vector<std::vector<BigInt>> paired(count);
    for (size_t j = 0; j < count; ++j) {
        paired[j] = side1[j];
        paired[j].insert(paired[j].end(), side2[j].begin(), side2[j].end());
    }
    auto q = cokernel(rows_matrix(paired, int(paired_orders.size())), paired_orders);
    return q && *q == g;
}

namespace {

// ---- certificate search over relation subgroups ----------------------------
//
// A choice of 2s relation pairs generates a subgroup H of the ambient
// (G_1 + Z^{2n_1}) + (G_2 + Z^{2n_2}); the admissibility conditions depend
// only on H. Subgroups correspond to full-rank lattices L in Z^N with
// Z^N/L = G that contain the ambient torsion lattice D, via H = L/D, and the
// generator count constraint becomes mu(L/D) <= 2s. Enumerating L by
// Hermite-form bases is therefore a complete search for each (n_1, n_2),
// independent of any bound on relation entries.

struct LatticeShape {
    int k1, n1, k2, n2, N;
    std::vector<BigInt> tors;  // ambient coordinate orders, 0 = free
};

void divisor_sequences(const BigInt& product, int len, std::vector<BigInt>& cur,
                       const std::function<void(const std::vector<BigInt>&)>& fn) {
    if (len == 0) {
        if (product == 1) fn(cur);
        return;
    }
    for (const BigInt& d : sorted_divisors(product)) {
        cur.push_back(d);
        divisor_sequences(product / d, len - 1, cur, fn);
        cur.pop_back();
    }
}

// x * H = v for an upper-triangular row basis; nullopt if not integral.
std::optional<std::vector<BigInt>> solve_in_basis(const IntMatrix& h, const std::vector<BigInt>& v) {
    int n = h.rows();
    std::vector<BigInt> x(size_t(n));
    for (int j = 0; j < n; ++j) {
        BigInt r = v[size_t(j)];
        for (int t = 0; t < j; ++t) r -= x[size_t(t)] * h.at(t, j);
        if (r % h.at(j, j) != 0) return std::nullopt;
        x[size_t(j)] = r / h.at(j, j);
    }
    return x;
}

std::optional<FiniteAbelianGroup> side_quotient(const IntMatrix& h, const LatticeShape& sh,
                                                int begin, int width) {
    std::vector<BigInt> orders(size_t(width));
    for (int j = 0; j < width; ++j) orders[size_t(j)] = sh.tors[size_t(begin + j)];
    IntMatrix proj(h.rows(), width);
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < width; ++j) proj.at(i, j) = h.at(i, begin + j);
    return cokernel(proj, orders);
}

struct LatticeCheck {
    bool admissible = false;
    std::vector<std::vector<BigInt>> generators;  // ambient coordinates, mu(H) of them
};

LatticeCheck check_lattice(const IntMatrix& h, const LatticeShape& sh,
                           const FiniteAbelianGroup& g, const FiniteAbelianGroup& g1,
                           const FiniteAbelianGroup& g2, int two_s) {
    LatticeCheck res;
    // Z^N / L = G
    auto total = cokernel(h, std::vector<BigInt>(size_t(sh.N), BigInt(0)));
    if (!total || !(*total == g)) return res;

    // D inside L, and D written in the L basis for the generator-count check.
    std::vector<std::vector<BigInt>> d_in_l;
    for (int j = 0; j < sh.N; ++j) {
        if (sh.tors[size_t(j)] == 0) continue;
        std::vector<BigInt> v(size_t(sh.N), BigInt(0));
        v[size_t(j)] = sh.tors[size_t(j)];
        auto x = solve_in_basis(h, v);
        if (!x) return res;
        d_in_l.push_back(std::move(*x));
    }

    int w1 = sh.k1 + 2 * sh.n1;
    auto q1 = side_quotient(h, sh, 0, w1);
    if (!q1 || !(*q1 == g2)) return res;
    auto q2 = side_quotient(h, sh, w1, sh.k2 + 2 * sh.n2);
    if (!q2 || !(*q2 == g1)) return res;

    // mu(H) and generators of H = L/D.
    std::vector<std::vector<BigInt>> gens;
    if (d_in_l.empty()) {
        if (sh.N > two_s) return res;
        for (int i = 0; i < sh.N; ++i) gens.push_back(h.row(i));
    } else {
        SmithNormalForm snf = smith_normal_form(rows_matrix(d_in_l, sh.N));
        int k = int(d_in_l.size());
        int mu = sh.N - k;
        for (int i = 0; i < k; ++i)
            if (snf.d.at(i, i) != 1) ++mu;
        if (mu > two_s) return res;
        IntMatrix w = unimodular_inverse(snf.v);
        for (int i = 0; i < sh.N; ++i) {
            if (i < k && snf.d.at(i, i) == 1) continue;
            std::vector<BigInt> ambient(size_t(sh.N), BigInt(0));
            for (int j = 0; j < sh.N; ++j)
                for (int t = 0; t < sh.N; ++t) ambient[size_t(j)] += w.at(i, t) * h.at(t, j);
            for (int j = 0; j < sh.N; ++j)
                if (sh.tors[size_t(j)] != 0)
                    ambient[size_t(j)] = mod_floor(ambient[size_t(j)], sh.tors[size_t(j)]);
            gens.push_back(std::move(ambient));
        }
    }
    res.admissible = true;
    res.generators = std::move(gens);
    return res;
}

// Enumerates Hermite-form bases of index-|G| sublattices of Z^N; returns false
// if the work budget was exhausted before completing the level.
bool enumerate_lattices(const LatticeShape& sh, const BigInt& g_order, long long budget,
                        const std::function<bool(const IntMatrix&)>& fn) {
    if (sh.N == 0) {
        if (g_order == 1) fn(IntMatrix(0, 0));
        return true;
    }
    bool complete = true;
    long long used = 0;
    std::vector<BigInt> cur;
    divisor_sequences(g_order, sh.N, cur, [&](const std::vector<BigInt>& diag) {
        if (!complete) return;
        BigInt count(1);
        for (int j = 0; j < sh.N; ++j)
            for (int i = 0; i < j; ++i) count *= diag[size_t(j)];
        if (count > budget - used) {
            complete = false;
            return;
        }
        used += count.convert_to<long long>();

        std::vector<std::pair<int, int>> cells;
        for (int j = 0; j < sh.N; ++j)
            for (int i = 0; i < j; ++i)
                if (diag[size_t(j)] > 1) cells.emplace_back(i, j);
        IntMatrix h(sh.N, sh.N);
        for (int i = 0; i < sh.N; ++i) h.at(i, i) = diag[size_t(i)];
        std::vector<BigInt> odo(cells.size(), BigInt(0));
        for (;;) {
            if (!fn(h)) return;  // caller found what it wanted
            size_t c = 0;
            for (; c < cells.size(); ++c) {
                auto [i, j] = cells[c];
                if (++odo[c] < diag[size_t(j)]) {
                    h.at(i, j) = odo[c];
                    break;
                }
                odo[c] = 0;
                h.at(i, j) = 0;
            }
            if (c == cells.size()) break;
        }
    });
    return complete;
}

}  // namespace

BoundInterval theta1_search(const FiniteAbelianGroup& g, const FiniteAbelianGroup& g1,
                            const FiniteAbelianGroup& g2, const ThetaCaps& caps) {
    BoundInterval out;
    out.lower = theta1_lower(g, g1, g2);
    out.method = "counting";
    BigInt g_order = g.order();

    for (int s = 0; s <= caps.max_n; ++s) {
        for (int n1 = 0; n1 <= s && !out.certificate; ++n1) {
            int n2 = s - n1;
            LatticeShape sh;
            sh.k1 = min_generators(g1);
            sh.k2 = min_generators(g2);
            sh.n1 = n1;
            sh.n2 = n2;
            sh.N = sh.k1 + 2 * n1 + sh.k2 + 2 * n2;
            sh.tors = ambient_orders_of(g1, 2 * n1);
            auto t2 = ambient_orders_of(g2, 2 * n2);
            sh.tors.insert(sh.tors.end(), t2.begin(), t2.end());

            bool complete = enumerate_lattices(sh, g_order, caps.max_lattices, [&](const IntMatrix& h) {
                LatticeCheck chk = check_lattice(h, sh, g, g1, g2, 2 * s);
                if (!chk.admissible) return true;
                AdmissibilityCertificate cert;
                cert.n1 = n1;
                cert.n2 = n2;
                int w1 = sh.k1 + 2 * n1;
                for (auto& gen : chk.generators) {
                    cert.side1.emplace_back(gen.begin(), gen.begin() + w1);
                    cert.side2.emplace_back(gen.begin() + w1, gen.end());
                }
                while (cert.side1.size() < size_t(2 * s)) {
                    cert.side1.emplace_back(size_t(w1), BigInt(0));
                    cert.side2.emplace_back(size_t(sh.N - w1), BigInt(0));
                }
                if (!cert.verify(g, g1, g2))
                    throw std::logic_error("theta1_search produced a non-verifying certificate");
                out.certificate = std::move(cert);
                return false;
            });
            if (!complete) out.search_capped = true;
        }
        if (out.certificate) {
            out.upper = Rational(s);
            out.method = "certificate";
            break;
        }
    }
    return out;
}

namespace {

// ---- theta_2 / theta_3 character enumeration --------------------------------

struct PairGroups {
    FiniteAbelianGroup g1, g2, sum;
    std::vector<BigInt> cod_orders;  // G_1 factors then G_2 factors
    int k1, k2;
};

PairGroups make_pair_groups(const FiniteAbelianGroup& g1, const FiniteAbelianGroup& g2) {
    PairGroups p{g1, g2, g1.direct_sum(g2), {}, min_generators(g1), min_generators(g2)};
    p.cod_orders = g1.invariant_factors();
    const auto& f2 = g2.invariant_factors();
    p.cod_orders.insert(p.cod_orders.end(), f2.begin(), f2.end());
    return p;
}

BigInt p_part_of_exponent(const FiniteAbelianGroup& g, const BigInt& p) {
    BigInt e = g.exponent(), pk(1);
    while (e % p == 0) {
        pk *= p;
        e /= p;
    }
    return pk;
}

// sigma(Y, j o iota_i) for every j in Hom(G_i, Z_{p^k}); the characters are
// pulled back to the summand presentation of H_1(Y).
std::vector<Rational> side_sigmas(const LensSpaceSum& y, const Homomorphism& iota, int row_begin,
                                  const std::vector<BigInt>& side_orders, const BigInt& modulus,
                                  std::vector<std::vector<BigInt>>* js = nullptr) {
    int n = int(y.summands.size());
    HomEnumerator chars(side_orders, {modulus});
    std::vector<Rational> out;
    for (BigInt idx = 0; idx < chars.size(); ++idx) {
        Homomorphism j = chars.at(idx);
        Character phi;
        phi.modulus = modulus;
        phi.values.resize(size_t(n));
        for (int t = 0; t < n; ++t) {
            BigInt v(0);
            for (size_t r = 0; r < side_orders.size(); ++r)
                v += j.matrix.at(0, int(r)) * iota.matrix.at(row_begin + int(r), t);
            phi.values[size_t(t)] = mod_floor(v, modulus);
        }
        out.push_back(cg_sigma(y, phi));
        if (js) js->push_back(j.matrix.row(0));
    }
    return out;
}

struct IotaScore {
    Rational value;
    BigInt iota_index;
};

// Max over primes and prime-power characters for one surjection iota.
Rational score_iota(const LensSpaceSum& y, const PairGroups& pg, const Homomorphism& iota,
                    const std::optional<long long>& sigma_k, CGWitness* witness) {
    Rational baseline = sigma_k ? Rational(std::llabs(*sigma_k)) : Rational(0);
    Rational best = baseline;
    if (witness) {
        witness->prime = 0;  // baseline witness: trivial characters, huge prime
        witness->value = baseline;
    }
    for (const BigInt& p : distinct_prime_factors(pg.sum.order())) {
        BigInt m1 = p_part_of_exponent(pg.g1, p);
        BigInt m2 = p_part_of_exponent(pg.g2, p);
        std::vector<std::vector<BigInt>> js1, js2;
        auto s1 = side_sigmas(y, iota, 0, pg.g1.invariant_factors(), m1, witness ? &js1 : nullptr);
        auto s2 = side_sigmas(y, iota, pg.k1, pg.g2.invariant_factors(), m2, witness ? &js2 : nullptr);
        Rational candidate;
        size_t w1 = 0, w2 = 0;
        if (sigma_k) {
            Rational sk(*sigma_k);
            Rational best1(0), best2(0);
            Rational xi1(xi_p(pg.g1, p)), xi2(xi_p(pg.g2, p));
            for (size_t i = 0; i < s1.size(); ++i) {
                Rational t = max(Rational(0), (s1[i] + sk).abs() - xi1);
                if (t > best1) { best1 = t; w1 = i; }
            }
            for (size_t i = 0; i < s2.size(); ++i) {
                Rational t = max(Rational(0), (s2[i] + sk).abs() - xi2);
                if (t > best2) { best2 = t; w2 = i; }
            }
            candidate = (best1 + best2) / Rational(2);
        } else {
            Rational xi(xi_p(pg.sum, p));
            size_t max1 = 0, min1 = 0, max2 = 0, min2 = 0;
            for (size_t i = 0; i < s1.size(); ++i) {
                if (s1[i] > s1[max1]) max1 = i;
                if (s1[i] < s1[min1]) min1 = i;
            }
            for (size_t i = 0; i < s2.size(); ++i) {
                if (s2[i] > s2[max2]) max2 = i;
                if (s2[i] < s2[min2]) min2 = i;
            }
            if (s1[max1] - s2[min2] >= s2[max2] - s1[min1]) {
                w1 = max1;
                w2 = min2;
            } else {
                w1 = min1;
                w2 = max2;
            }
            candidate = ((s1[w1] - s2[w2]).abs() - xi) / Rational(2);
        }
        if (candidate > best) {
            best = candidate;
            if (witness) {
                witness->prime = p;
                witness->modulus1 = m1;
                witness->modulus2 = m2;
                witness->j1 = js1.empty() ? std::vector<BigInt>{} : js1[w1];
                witness->j2 = js2.empty() ? std::vector<BigInt>{} : js2[w2];
                witness->value = best;
            }
        }
    }
    return best;
}

Rational theta23_core(const LensSpaceSum& y, const std::optional<long long>& sigma_k,
                      const FiniteAbelianGroup& g1, const FiniteAbelianGroup& g2,
                      const ThetaCaps& caps, CGWitness* witness) {
    PairGroups pg = make_pair_groups(g1, g2);
    HomEnumerator homs(y.summand_orders(), pg.cod_orders);
    if (homs.size() > caps.max_homs)
        throw SearchSpaceTooLarge("surjection search space " + homs.size().str() +
                                  " exceeds cap " + std::to_string(caps.max_homs));
    long long total = homs.size().convert_to<long long>();
    int threads = std::max(1, caps.threads);

    auto scan = [&](long long begin, long long end) -> std::optional<IotaScore> {
        std::optional<IotaScore> local;
        for (long long i = begin; i < end; ++i) {
            Homomorphism iota = homs.at(BigInt(i));
            if (!iota.is_surjective()) continue;
            Rational v = score_iota(y, pg, iota, sigma_k, nullptr);
            if (!local || v < local->value) local = IotaScore{v, BigInt(i)};
        }
        return local;
    };

    std::optional<IotaScore> best;
    if (threads == 1 || total < 64) {
        best = scan(0, total);
    } else {
        std::vector<std::future<std::optional<IotaScore>>> futs;
        long long chunk = (total + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            long long b = t * chunk, e = std::min(total, b + chunk);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, scan, b, e));
        }
        for (auto& f : futs) {
            auto local = f.get();
            if (!local) continue;
            if (!best || local->value < best->value ||
                (local->value == best->value && local->iota_index < best->iota_index))
                best = local;
        }
    }
    if (!best)
        throw std::invalid_argument("no surjection onto G_1 + G_2 exists; candidate filter violated");
    if (witness) score_iota(y, pg, homs.at(best->iota_index), sigma_k, witness);
    return best->value;
}

}  // namespace

Rational theta2_pair(const LensSpaceSum& y, const FiniteAbelianGroup& g1,
                     const FiniteAbelianGroup& g2, const ThetaCaps& caps, CGWitness* witness) {
    return theta23_core(y, std::nullopt, g1, g2, caps, witness);
}

Rational theta3_pair(const LensSpaceSum& y, long long sigma_k, const FiniteAbelianGroup& g1,
                     const FiniteAbelianGroup& g2, const ThetaCaps& caps, CGWitness* witness) {
    return theta23_core(y, sigma_k, g1, g2, caps, witness);
}

Rational theta3_pair(const KnotSpec& k, const FiniteAbelianGroup& g1, const FiniteAbelianGroup& g2,
                     const ThetaCaps& caps) {
    BranchedCover cover = branched_double_cover(k);
    if (!cover.manifold)
        throw std::invalid_argument("theta_3 needs the cover as a manifold; spec has Seifert terms");
    return theta3_pair(*cover.manifold, knot_invariants(k).signature, g1, g2, caps);
}

namespace {

ThetaOutcome theta_min_over_pairs(const FiniteAbelianGroup& g,
                                  const std::optional<LensSpaceSum>& manifold,
                                  const std::optional<long long>& sigma_k, const ThetaCaps& caps) {
    ThetaOutcome out;
    out.manifold_available = manifold.has_value();
    std::vector<PairCandidate> pairs;
    try {
        pairs = candidate_pairs(g, caps);
    } catch (const SearchSpaceTooLarge&) {
        out.method = "enumeration";
        out.complete = false;  // partial minimum would not be a bound
        return out;
    }

    for (const PairCandidate& pc : pairs) {
        PairEvaluation ev;
        ev.g1 = pc.g1;
        ev.g2 = pc.g2;
        ev.theta1_count = theta1_lower(g, pc.g1, pc.g2);
        ev.combined = ev.theta1_count;
        if (manifold) {
            try {
                ev.cg_value = theta23_core(*manifold, sigma_k, pc.g1, pc.g2, caps, nullptr);
                ev.combined = max(ev.combined, *ev.cg_value);
            } catch (const SearchSpaceTooLarge&) {
                ev.cg_capped = true;  // sound: fall back to the counting bound alone
            }
        }
        out.pair_table.push_back(std::move(ev));
    }

    out.complete = true;
    out.method = manifold ? "enumeration" : "counting-only";
    out.value = Rational(0);
    for (size_t i = 0; i < out.pair_table.size(); ++i) {
        if (!out.argmin || out.pair_table[i].combined < out.value) {
            out.value = out.pair_table[i].combined;
            out.argmin = i;
        }
    }
    out.ceiling = out.value.ceil();
    if (out.argmin && manifold && out.pair_table[*out.argmin].cg_value) {
        const PairEvaluation& ev = out.pair_table[*out.argmin];
        CGWitness w;
        theta23_core(*manifold, sigma_k, ev.g1, ev.g2, caps, &w);
        out.witness = w;
    }
    return out;
}

}  // namespace

ThetaOutcome theta_lower(const BranchedCover& cover, long long sigma_k, const ThetaCaps& caps) {
    return theta_min_over_pairs(cover.h1, cover.manifold, sigma_k, caps);
}

ThetaOutcome theta_lower(const KnotSpec& k, const ThetaCaps& caps) {
    BranchedCover cover = branched_double_cover(k);
    long long sig = knot_invariants(k).signature;
    return theta_lower(cover, sig, caps);
}

ThetaOutcome theta_cap(const LensSpaceSum& y, const ThetaCaps& caps) {
    return theta_min_over_pairs(y.h1(), y, std::nullopt, caps);
}

// ---- Appendix tools mod 9 ---------------------------------------------------

namespace {

int inverse_mod9(int u) {
    for (int v = 1; v < 9; ++v)
        if (u * v % 9 == 1) return v;
    throw std::invalid_argument("not a unit mod 9");
}

}  // namespace

bool SurjectionMatrix::is_surjective() const {
    // rank of the mod-3 reduction must be m
    std::vector<int> a(e);
    for (int& x : a) x = ((x % 3) + 3) % 3;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int i = rank; i < m; ++i)
            if (a[size_t(i) * n + col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(a[size_t(rank) * n + j], a[size_t(piv) * n + j]);
        int inv = a[size_t(rank) * n + col] == 1 ? 1 : 2;
        for (int j = 0; j < n; ++j) a[size_t(rank) * n + j] = a[size_t(rank) * n + j] * inv % 3;
        for (int i = 0; i < m; ++i) {
            if (i == rank || a[size_t(i) * n + col] == 0) continue;
            int f = a[size_t(i) * n + col];
            for (int j = 0; j < n; ++j)
                a[size_t(i) * n + j] = ((a[size_t(i) * n + j] - f * a[size_t(rank) * n + j]) % 3 + 3) % 3;
        }
        ++rank;
    }
    return rank == m;
}

LemmaA2Result lemma_a2_reduce(const SurjectionMatrix& s) {
    LemmaA2Result r;
    r.reduced = s;
    for (int& x : r.reduced.e) x = ((x % 9) + 9) % 9;
    r.u.assign(size_t(s.m) * s.m, 0);
    for (int i = 0; i < s.m; ++i) r.u[size_t(i) * s.m + i] = 1;
    r.perm.resize(size_t(s.n));
    for (int j = 0; j < s.n; ++j) r.perm[size_t(j)] = j;

    SurjectionMatrix& a = r.reduced;
    for (int row = 0; row < s.m; ++row) {
        int pivot_col = -1;
        for (int c = row; c < s.n; ++c)
            if (a.at(row, c) % 3 != 0) { pivot_col = c; break; }
        if (pivot_col < 0)
            throw std::invalid_argument("lemma A.2 reduction: input is not surjective");
        if (pivot_col != row) {
            for (int i = 0; i < s.m; ++i) std::swap(a.at(i, row), a.at(i, pivot_col));
            std::swap(r.perm[size_t(row)], r.perm[size_t(pivot_col)]);
        }
        int inv = inverse_mod9(a.at(row, row));
        for (int j = 0; j < s.n; ++j) a.at(row, j) = a.at(row, j) * inv % 9;
        for (int j = 0; j < s.m; ++j)
            r.u[size_t(row) * s.m + j] = r.u[size_t(row) * s.m + j] * inv % 9;
        for (int i = 0; i < s.m; ++i) {
            if (i == row) continue;
            int f = a.at(i, row);
            if (f == 0) continue;
            for (int j = 0; j < s.n; ++j) a.at(i, j) = ((a.at(i, j) - f * a.at(row, j)) % 9 + 9) % 9;
            for (int j = 0; j < s.m; ++j)
                r.u[size_t(i) * s.m + j] =
                    ((r.u[size_t(i) * s.m + j] - f * r.u[size_t(row) * s.m + j]) % 9 + 9) % 9;
        }
    }
    return r;
}

CharacterChoice prop_a_character(const SurjectionMatrix& s) {
    LemmaA2Result red = lemma_a2_reduce(s);
    const std::vector<Rational>& table = lens_sigma_table(9, 4);
    const Rational minus_one_ninth(BigInt(-1), BigInt(9));

    CharacterChoice choice;
    int negatives = 0;
    for (int c = s.m; c < s.n; ++c) {
        int v = 0;
        for (int i = 0; i < s.m; ++i) v += 2 * red.reduced.at(i, c);
        Rational sigma = table[size_t(v % 9)];
        choice.h_vector.push_back(sigma);
        if (sigma == minus_one_ninth) ++negatives;
    }
    int pick = negatives < s.m ? 2 : 6;
    choice.j.assign(size_t(s.m), pick);

    // Pull j back through u and evaluate on the original s.
    LensSpaceSum y;
    for (int t = 0; t < s.n; ++t) y.summands.push_back(LensSpace{9, 4, +1});
    Character phi;
    phi.modulus = 9;
    phi.values.resize(size_t(s.n));
    for (int t = 0; t < s.n; ++t) {
        int v = 0;
        for (int i = 0; i < s.m; ++i) {
            int ju = 0;
            for (int r = 0; r < s.m; ++r) ju += choice.j[size_t(r)] * red.u[size_t(r) * s.m + i];
            v += ju * s.at(i, t);
        }
        phi.values[size_t(t)] = BigInt(((v % 9) + 9) % 9);
    }
    choice.sigma_achieved = cg_sigma(y, phi);

    Rational required = Rational(BigInt(10 * s.m), BigInt(9));
    if (choice.sigma_achieved < required)
        throw std::logic_error("character selection failed to reach (10/9) m");
    return choice;
}

Rational main_theorem_bound(long long n_summands) {
    if (n_summands < 0) throw std::invalid_argument("summand count must be nonnegative");
    const long long n = n_summands;
    std::optional<Rational> best;
    for (long long l = 0; l <= n; ++l) {
        Rational counting((n - l + 1) / 2);
        long long lp = (l + 1) / 2;  // ceil(l/2) Z_9 summands on the larger side
        Rational cg = max(Rational(0),
                          (Rational(BigInt(10 * lp), BigInt(9)) - Rational(lp + n - l)) / Rational(2));
        Rational val = max(counting, cg);
        if (!best || val < *best) best = val;
    }
    return *best;
}

}  // namespace dsg
