// The generalized Ore localization engine: fraction calculus over the
// commutative and Hecke oracles, sampled (O1)/(O2) checks, the universal
// map, and the (O1)-violating negative control.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "heckelab/grid.hpp"
#include "heckelab/ore.hpp"

using namespace heckelab;

TEST_CASE("integer fractions against rational arithmetic") {
    OreLocalization<IntegerOracle> loc{IntegerOracle{}};
    // (1,2) ~ (2,4)
    CHECK(loc.eq(loc.fraction(0, 0, 1, 2), loc.fraction(0, 0, 2, 4)));
    // zero numerators are all equivalent
    CHECK(loc.eq(loc.fraction(0, 0, 0, 2), loc.fraction(0, 0, 0, 8)));
    // [(3,2)] + [(1,4)] = [(14,8)] ~ [(7,4)]
    auto s = loc.add(loc.fraction(0, 0, 3, 2), loc.fraction(0, 0, 1, 4));
    CHECK(s.num == 14);
    CHECK(s.den == 8);
    CHECK(loc.eq(s, loc.fraction(0, 0, 7, 4)));
    // x + 0 = x, x * identity = x
    auto x = loc.fraction(0, 0, 5, 2);
    CHECK(loc.eq(loc.add(x, loc.fraction(0, 0, 0, 1)), x));
    auto xid = loc.mul(x, loc.fraction(0, 0, 1, 1));
    REQUIRE(xid);
    CHECK(loc.eq(*xid, x));
    // [(3,2)] [(5,4)] = [(15,8)]
    auto p = loc.mul(loc.fraction(0, 0, 3, 2), loc.fraction(0, 0, 5, 4));
    REQUIRE(p);
    CHECK(loc.eq(*p, loc.fraction(0, 0, 15, 8)));
    // commutativity of addition on random samples
    std::mt19937_64 rng(1);
    for (int t = 0; t < 30; ++t) {
        mpz_class a(static_cast<long>(rng() % 21) - 10), b(static_cast<long>(rng() % 21) - 10);
        mpz_class s1 = 1 << (rng() % 4), s2 = 1 << (rng() % 4);
        auto u = loc.fraction(0, 0, a, s1);
        auto v = loc.fraction(0, 0, b, s2);
        CHECK(loc.eq(loc.add(u, v), loc.add(v, u)));
    }
}

TEST_CASE("equivalence is representative-independent", "[property]") {
    OreLocalization<IntegerOracle> loc{IntegerOracle{}};
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        long a = static_cast<long>(rng() % 15) - 7;
        mpz_class s = 1 << (rng() % 3);
        mpz_class blow = 1 << (1 + rng() % 3);
        auto x = loc.fraction(0, 0, mpz_class(a), s);
        auto x2 = loc.fraction(0, 0, mpz_class(a) * blow, s * blow);  // same class
        long b = static_cast<long>(rng() % 15) - 7;
        auto y = loc.fraction(0, 0, mpz_class(b), mpz_class(1 << (rng() % 3)));
        CHECK(loc.eq(loc.add(x, y), loc.add(x2, y)));
        CHECK(loc.eq(*loc.mul(x, y), *loc.mul(x2, y)));
    }
}

TEST_CASE("(O1) violating oracle breaks transitivity") {
    CHECK(zmod6_transitivity_fails());
    // and the sampled (O1) checker reports the violation: 2 * 3 = 0 in Z/6
    OreLocalization<ZmodSixOracle> loc{ZmodSixOracle{}};
    auto rep = loc.verify_O1({{0, 2, 3}});
    CHECK(rep.failures == 1);
}

TEST_CASE("Hecke oracle: the commuting solver") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    BlockLabel beta{{0, 1}, {1, 1}};
    HeckeOracle oracle(F, 2, beta, 120);
    OreLocalization<HeckeOracle> loc{oracle};
    ResidueSeq i{0, 1}, si{1, 0};

    SECTION("off-diagonal atom with the adjacent factor (case 2)") {
        auto a = oracle.gen_elem(1, si);  // e(i) T_1 e(s_1 i)
        auto s = oracle.sigma_elem({{1, 2, 0}}, si);
        auto [b, u] = oracle.solve_right(0, 0, a, s);
        CHECK(oracle.eq(oracle.mul(u, a), oracle.mul(b, s)));
    }
    SECTION("X-polynomial atoms commute (case 1)") {
        auto a = oracle.xmono_elem({1, -1}, i);
        auto s = oracle.sigma_elem({{1, 2, 0}}, i);
        auto [b, u] = oracle.solve_right(0, 0, a, s);
        CHECK(oracle.eq(oracle.mul(u, a), oracle.mul(b, s)));
    }
    SECTION("diagonal atom squares the factor (case 5)") {
        auto F5 = FieldSpec::nondegenerate_cyclotomic(3);
        BlockLabel b2{{0, 2}};
        HeckeOracle o2(F5, 2, b2, 120);
        ResidueSeq ii{0, 0};
        auto ad = o2.gen_diag_elem(1, ii);
        auto sd = o2.sigma_elem({{1, 2, 1}}, ii);  // twisted factor, condition 0 != 1
        auto [bd, ud] = o2.solve_right(0, 0, ad, sd);
        CHECK(ud.factors.size() == 2);
        CHECK(o2.eq(o2.mul(ud, ad), o2.mul(bd, sd)));
    }
    SECTION("left-oriented solver through the anti-involution") {
        auto a = oracle.gen_elem(1, si);
        auto s = oracle.sigma_elem({{1, 2, 0}}, i);  // over the left route of a
        auto [c, v] = oracle.solve_left(0, 0, a, s);
        CHECK(oracle.eq(oracle.mul(a, v), oracle.mul(s, c)));
    }
}

TEST_CASE("Hecke fraction equivalence and multiplication") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    BlockLabel beta{{0, 1}, {1, 1}};
    HeckeOracle oracle(F, 2, beta, 120);
    OreLocalization<HeckeOracle> loc{oracle};
    ResidueSeq i{0, 1};
    int ci = oracle.index_of(i);
    // ((X1-X2)e(i), e(i)) ~ ((X1-X2)^2 e(i), (X1-X2)e(i))
    auto f1 = loc.fraction(ci, ci, oracle.sigma_elem({{1, 2, 0}}, i), oracle.idem(ci));
    auto f2 = loc.fraction(ci, ci, oracle.sigma_elem({{1, 2, 0}, {1, 2, 0}}, i),
                           oracle.sigma_elem({{1, 2, 0}}, i));
    CHECK(loc.eq(f1, f2));
    // cross-component products vanish
    ResidueSeq j{1, 0};
    auto g = loc.fraction(oracle.index_of(j), oracle.index_of(j),
                          oracle.idem(oracle.index_of(j)), oracle.idem(oracle.index_of(j)));
    CHECK_FALSE(loc.mul(f1, g));
}

TEST_CASE("sampled (O2) verification") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    BlockLabel beta{{0, 1}, {1, 1}};
    HeckeOracle oracle(F, 2, beta, 120);
    OreLocalization<HeckeOracle> loc{oracle};
    ResidueSeq i{0, 1}, si{1, 0};
    std::vector<std::tuple<int, int, HeckeOreElem, HeckeOreElem>> samples;
    samples.emplace_back(0, 0, oracle.gen_elem(1, si), oracle.sigma_elem({{1, 2, 0}}, si));
    samples.emplace_back(0, 0, oracle.xmono_elem({0, 1}, i),
                         oracle.sigma_elem({{2, 1, 0}}, i));
    auto rep = loc.verify_O2(samples);
    CHECK(rep.checked == 2);
    CHECK(rep.failures == 0);
}

TEST_CASE("the full acceptance content for the Ore engine") {
    auto crit = criterion_ore_engine(777);
    INFO(crit.detail);
    CHECK(crit.passed);
}
