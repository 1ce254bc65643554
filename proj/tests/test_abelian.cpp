#include <doctest.h>

#include <random>

#include "dsg/abelian.hpp"

using dsg::BigInt;
using dsg::FiniteAbelianGroup;
using dsg::FreeExtension;
using dsg::IntMatrix;

namespace {

FiniteAbelianGroup grp(std::initializer_list<long long> orders) {
    std::vector<BigInt> v;
    for (long long o : orders) v.emplace_back(o);
    return FiniteAbelianGroup::from_cyclic_orders(v);
}

}  // namespace

TEST_CASE("canonical invariant factors") {
    CHECK(grp({}).trivial());
    CHECK(grp({1, 1}).trivial());
    CHECK(grp({6, 4}).invariant_factors() == std::vector<BigInt>{2, 12});
    CHECK(grp({9, 3, 4}).invariant_factors() == std::vector<BigInt>{3, 36});
    CHECK(grp({9}).direct_sum(grp({9})) == grp({9, 9}));
    CHECK(grp({9, 9}).order() == 81);
    CHECK(grp({9, 9}).exponent() == 9);
    CHECK(grp({}).exponent() == 1);
}

TEST_CASE("cokernel examples") {
    FreeExtension z2{{}, 2};
    CHECK(*dsg::cokernel(IntMatrix{{2, 0}, {0, 1}, {9, 0}}, z2) == grp({}));
    CHECK(*dsg::cokernel(IntMatrix{{9, 0}, {0, 1}}, z2) == grp({9}));
    CHECK(*dsg::cokernel(IntMatrix(0, 1), FreeExtension{grp({9}), 0}) == grp({9}));
    CHECK(!dsg::cokernel(IntMatrix{{2, 0}}, z2).has_value());  // infinite quotient
    CHECK_THROWS_AS(dsg::cokernel(IntMatrix{{1, 2, 3}}, z2), std::invalid_argument);
}

TEST_CASE("cokernel consistency with raw smith form") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
    for (int iter = 0; iter < 100; ++iter) {
        int n = dim(rng), r = dim(rng);
        IntMatrix rel(r, n);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j) rel.at(i, j) = entry(rng);
        auto q = dsg::cokernel(rel, FreeExtension{{}, n});
        std::vector<BigInt> expected;
        int rank = 0;
        for (const BigInt& d : dsg::smith_diagonal(rel))
            if (d != 0) {
                ++rank;
                if (d > 1) expected.push_back(d);
            }
        if (rank < n) {
            CHECK(!q.has_value());
        } else {
            REQUIRE(q.has_value());
            CHECK(q->invariant_factors() == expected);
        }
    }
}

TEST_CASE("min_generators, xi_p, s_q") {
    CHECK(dsg::min_generators(grp({})) == 0);
    CHECK(dsg::min_generators(grp({9, 9})) == 2);
    std::vector<BigInt> many(110, BigInt(9));
    CHECK(dsg::min_generators(FiniteAbelianGroup::from_cyclic_orders(many)) == 110);

    FiniteAbelianGroup g = grp({9, 3, 4});
    CHECK(dsg::xi_p(g, 3) == 2);
    CHECK(dsg::xi_p(g, 2) == 1);
    CHECK(dsg::xi_p(grp({}), 3) == 0);
    CHECK_THROWS_AS(dsg::xi_p(g, 6), std::invalid_argument);

    CHECK(dsg::s_q(grp({9, 9, 9, 3, 3}), 0, 3, 2) == 3);
    CHECK(dsg::s_q(grp({9, 9, 9, 3, 3}), 0, 3, 1) == 5);
    CHECK(dsg::s_q(grp({}), 4, 3, 2) == 4);
}

TEST_CASE("homomorphism enumeration counts") {
    CHECK(dsg::enumerate_homomorphisms(grp({9}), grp({3}), false).size() == 3);
    CHECK(dsg::enumerate_homomorphisms(grp({9}), grp({3}), true).size() == 2);
    CHECK(dsg::enumerate_homomorphisms(grp({9, 9}), grp({9}), false).size() == 81);
    for (const auto& h : dsg::enumerate_homomorphisms(grp({9, 9}), grp({9}), false))
        CHECK(h.well_defined());
    CHECK_THROWS_AS(dsg::enumerate_homomorphisms(grp({9, 9, 9, 9, 9}), grp({9, 9, 9, 9, 9}),
                                                 false, 1000),
                    dsg::SearchSpaceTooLarge);
}

TEST_CASE("hom count matches the gcd closed form") {
    std::vector<FiniteAbelianGroup> pool{grp({}),   grp({3}),    grp({9}),    grp({3, 3}),
                                         grp({27}), grp({3, 9}), grp({9, 9}), grp({3, 3, 3}),
                                         grp({3, 27})};
    for (const auto& a : pool)
        for (const auto& b : pool) {
            BigInt closed(1);
            for (const BigInt& d : a.invariant_factors())
                for (const BigInt& e : b.invariant_factors())
                    closed *= boost::multiprecision::gcd(d, e);
            if (closed > 100000) continue;
            CHECK(BigInt(dsg::enumerate_homomorphisms(a, b, false).size()) == closed);
        }
}

TEST_CASE("quotient monotonicity of s_q") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> pick(0, 5), rels(0, 3), entry(-8, 8);
    const long long orders[6] = {2, 3, 4, 8, 9, 27};
    for (int iter = 0; iter < 150; ++iter) {
        std::vector<BigInt> fac;
        int k = 1 + pick(rng) % 4;
        for (int i = 0; i < k; ++i) fac.emplace_back(orders[pick(rng)]);
        FiniteAbelianGroup a = FiniteAbelianGroup::from_cyclic_orders(fac);
        int n = dsg::min_generators(a);
        IntMatrix rel(rels(rng), n);
        for (int i = 0; i < rel.rows(); ++i)
            for (int j = 0; j < n; ++j) rel.at(i, j) = entry(rng);
        auto h = dsg::cokernel(rel, FreeExtension{a, 0});
        REQUIRE(h.has_value());
        for (const BigInt& p : dsg::distinct_prime_factors(a.order())) {
            BigInt pk = p;
            for (int kk = 1; pk <= a.exponent(); ++kk, pk *= p)
                CHECK(dsg::s_q(*h, 0, p, kk) <= dsg::s_q(a, 0, p, kk));
        }
        CHECK(dsg::is_quotient_of(*h, a));
    }
}

TEST_CASE("is_quotient_of agrees with surjection existence") {
    std::vector<FiniteAbelianGroup> pool{grp({}),   grp({2}),    grp({4}),    grp({2, 2}),
                                         grp({3}),  grp({9}),    grp({3, 3}), grp({6}),
                                         grp({12}), grp({2, 4}), grp({18})};
    for (const auto& g : pool)
        for (const auto& h : pool) {
            bool surj = !dsg::enumerate_homomorphisms(g, h, true).empty();
            CHECK(surj == dsg::is_quotient_of(h, g));
        }
}

TEST_CASE("groups of a given order") {
    CHECK(dsg::abelian_groups_of_order(1).size() == 1);
    CHECK(dsg::abelian_groups_of_order(9).size() == 2);   // Z9, Z3+Z3
    CHECK(dsg::abelian_groups_of_order(27).size() == 3);
    CHECK(dsg::abelian_groups_of_order(36).size() == 4);
    CHECK(dsg::abelian_groups_of_order(81).size() == 5);
}
