#include <doctest.h>

#include <random>

#include "dsg/knot_dsl.hpp"

using dsg::KnotSpec;
using dsg::ParseError;
using dsg::TwoBridgeKnot;

namespace {

std::string code_of(const std::string& text) {
    try {
        dsg::parse_knot(text);
    } catch (const ParseError& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST_CASE("parsing the basic forms") {
    KnotSpec one = dsg::parse_knot("2b(9/4)");
    REQUIRE(one.summands.size() == 1);
    CHECK(std::get<TwoBridgeKnot>(one.summands[0]) == TwoBridgeKnot{9, 4});
    CHECK(!one.ribbon.has_value());

    CHECK(dsg::parse_knot("2b(9/4)^3").summands.size() == 3);
    CHECK(dsg::parse_knot("unknot").summands.empty());
    CHECK(dsg::parse_knot(" 2b( 9 / 4 ) # 2b(3/1) ").summands.size() == 2);
    CHECK(dsg::parse_knot("2b(9/2)").summands.size() == 1);  // q even is fine

    KnotSpec seif = dsg::parse_knot("seifert([[-1,1],[0,-1]]) ribbon");
    REQUIRE(seif.summands.size() == 1);
    CHECK(seif.ribbon == true);
    CHECK(std::get<dsg::SeifertMatrix>(seif.summands[0]).v.at(0, 1) == 1);

    KnotSpec tail = dsg::parse_knot("2b(9/4)^2 ribbon");
    CHECK(tail.ribbon == true);
    CHECK(tail.summands.size() == 2);
}

TEST_CASE("diagnostic codes and positions") {
    CHECK(code_of("2b(8/3)") == "E_2B_P_EVEN");
    CHECK(code_of("2b(9/9)") == "E_2B_Q_RANGE");
    CHECK(code_of("2b(9/0)") == "E_2B_Q_RANGE");
    CHECK(code_of("2b(9/6)") == "E_2B_NOT_REDUCED");
    CHECK(code_of("2b(1/1)") == "E_2B_P_RANGE");
    CHECK(code_of("seifert([[1,0],[0,1]])") == "E_SEIFERT_UNIMODULAR");
    CHECK(code_of("seifert([[1,1],[0,-1],[0,0]])") == "E_SEIFERT_SHAPE");
    CHECK(code_of("trefoil") == "E_PARSE");
    CHECK(code_of("2b(9/4)#") == "E_PARSE");
    CHECK(code_of("2b(9/4)^0") == "E_POWER_RANGE");
    CHECK(code_of("") == "E_PARSE");

    try {
        dsg::parse_knot("2b(9/4) # 2b(8/3)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.code() == "E_2B_P_EVEN");
        CHECK(e.position() == 10);
    }
}

TEST_CASE("print round trip") {
    auto same = [](const KnotSpec& a, const KnotSpec& b) {
        if (a.summands.size() != b.summands.size()) return false;
        if (a.ribbon.value_or(false) != b.ribbon.value_or(false)) return false;
        for (size_t i = 0; i < a.summands.size(); ++i) {
            const auto* ta = std::get_if<TwoBridgeKnot>(&a.summands[i]);
            const auto* tb = std::get_if<TwoBridgeKnot>(&b.summands[i]);
            if ((ta == nullptr) != (tb == nullptr)) return false;
            if (ta && !(*ta == *tb)) return false;
            if (!ta && !(std::get<dsg::SeifertMatrix>(a.summands[i]).v ==
                         std::get<dsg::SeifertMatrix>(b.summands[i]).v))
                return false;
        }
        return true;
    };

    CHECK(dsg::print_knot(dsg::parse_knot("unknot")) == "unknot");
    CHECK(dsg::print_knot(dsg::parse_knot("2b(9/4)#2b(9/4)")) == "2b(9/4)^2");

    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> nterms(0, 4), coin(0, 1), pickp(0, 2);
    const long long ps[3][2] = {{3, 1}, {9, 4}, {5, 3}};
    for (int iter = 0; iter < 80; ++iter) {
        KnotSpec spec;
        int n = nterms(rng);
        for (int i = 0; i < n; ++i) {
            if (coin(rng)) {
                auto [p, q] = ps[pickp(rng)];
                spec.summands.emplace_back(TwoBridgeKnot{p, q});
            } else {
                spec.summands.emplace_back(dsg::SeifertMatrix{dsg::IntMatrix{{-1, 1}, {0, -1}}});
            }
        }
        if (coin(rng)) spec.ribbon = true;
        KnotSpec back = dsg::parse_knot(dsg::print_knot(spec));
        CHECK(same(spec, back));
    }
}
