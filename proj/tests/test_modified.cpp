// The modified affine Hecke calculus: probe evaluation, the symbolic action,
// the relation suites, basis independence and center candidates.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "heckelab/modexpr.hpp"

using namespace heckelab;

namespace {
const BlockLabel kBeta{{0, 1}, {1, 1}};
}

TEST_CASE("evaluate on probes") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep = get_regular_rep(F, 2, Weight({0, 1}, 3));
    ModEvaluator ev(rep, kBeta);
    ResidueSeq i{0, 1};
    // e(i) evaluates to the restricted idempotent
    auto E = ev.eval(ModExpr::idem(i));
    CHECK(E * E == E);
    CHECK_FALSE(E.is_zero());
    // the inverse atom really inverts its difference on the block
    auto inv = ModExpr::inv_diff(1, 2, i, 3);
    auto diff = ModExpr::sum(
        {ModExpr::xvar(1, 1, i), ModExpr::scalar(-F.one(), ModExpr::xvar(2, 1, i))});
    CHECK(ev.eval(ModExpr::prod({inv, diff})) == E);
    CHECK(ev.eval(ModExpr::prod({diff, inv})) == E);
}

TEST_CASE("inverse atoms reject bad side conditions") {
    CHECK_THROWS_AS(ModExpr::inv_diff(1, 2, ResidueSeq{0, 0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(ModExpr::inv_atom(1, 2, 2, ResidueSeq{0, 1}, 3), std::invalid_argument);
}

TEST_CASE("the symbolic action") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    ModAction act(F, 2);
    ResidueSeq i{0, 1}, j{1, 0};
    auto one_i = ModVec::unit(F, 2, i);
    // X_k e(i) f_i = t_k f_i
    auto xv = act.act(ModExpr::xvar(1, 1, i), one_i);
    REQUIRE(xv.components().count(i) == 1);
    CHECK(xv.components().at(i).num == MultiPoly::variable(2, true, 1, F.one()));
    // e(j) f_i = 0 off route
    CHECK(act.act(ModExpr::idem(j), one_i).is_zero());
    // T_1 e(i) . 1_i = ((t2 - q t1)/(t2 - t1))_{s_1 i} + (q-1) t2/(t2-t1) . 1_i
    auto tv = act.act(ModExpr::gen(1, i), one_i);
    REQUIRE(tv.components().count(i) == 1);
    REQUIRE(tv.components().count(j) == 1);
    auto t1 = MultiPoly::variable(2, true, 1, F.one());
    auto t2 = MultiPoly::variable(2, true, 2, F.one());
    // cross-multiplied forms against the denominator (t1 - t2) stored by key
    const RatFun& top = tv.components().at(j);
    CHECK(top.num == (t2 - t1.scaled(F.q())).scaled(-F.one()));
    const RatFun& diag = tv.components().at(i);
    CHECK(diag.num == t2.scaled(-(F.q() - F.one())));
}

TEST_CASE("semantic consistency of the two semantics", "[property]") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    int n = 2;
    ModAction act(F, n);
    std::mt19937_64 rng(31);
    auto seqs = sequences_of_block(kBeta);
    auto random_expr = [&]() -> ModExprPtr {
        const ResidueSeq& i = seqs[rng() % seqs.size()];
        switch (rng() % 4) {
            case 0: return ModExpr::idem(i);
            case 1: return ModExpr::gen(1, i);
            case 2: {
                std::vector<int> a(n);
                for (auto& x : a) x = static_cast<int>(rng() % 3) - 1;
                return ModExpr::xmono(a, i);
            }
            default: return ModExpr::inv_diff(1, 2, i, 3);
        }
    };
    auto rep = get_regular_rep(F, n, Weight({0, 1}, 3));
    for (int t = 0; t < 12; ++t) {
        auto x = random_expr();
        auto y = random_expr();
        auto xy = x * y;
        // product evaluates to the product of evaluations
        ModEvaluator ev(rep, kBeta);
        CHECK(ev.eval(xy) == ev.eval(x) * ev.eval(y));
        // and acts as the composition
        for (const auto& w : action_panel(F, n, kBeta))
            CHECK(act.act(xy, w) == act.act(x, act.act(y, w)));
    }
}

TEST_CASE("probe coherence with the between-maps", "[property]") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto repB = get_regular_rep(F, 2, Weight({0, 0, 1, 1}, 3));
    auto repS = get_regular_rep(F, 2, Weight({0, 1}, 3));
    BetweenMap pi(repB, repS);
    ModEvaluator evB(repB, kBeta), evS(repS, kBeta);
    std::mt19937_64 rng(3);
    auto seqs = sequences_of_block(kBeta);
    for (int t = 0; t < 6; ++t) {
        const ResidueSeq& i = seqs[rng() % seqs.size()];
        auto x = ModExpr::prod({ModExpr::gen(1, i), ModExpr::inv_diff(1, 2, i, 3)});
        // evaluate upstairs, transport, compare with the downstairs evaluation
        DenseMatrix up = evB.unrestrict(evB.eval(x));
        DenseMatrix down_direct = evS.unrestrict(evS.eval(x));
        CHECK(pi.apply_matrix(up) == repS->left_mult_matrix(
                                         repS->element(down_direct.apply(repS->unit_vector()))));
    }
}

TEST_CASE("relation suite at the marked points") {
    for (const auto& spec :
         {FieldSpec::nondegenerate_cyclotomic(3), FieldSpec::degenerate_prime(2)}) {
        for (const auto& line : modified_relation_suite(spec, 2, kBeta, 120)) {
            INFO(line.relation << " at " << residue_str(line.seq) << " " << line.witness);
            CHECK(line.passed);
        }
    }
    // the i_r = i_{r+1} inverse relations need an equal pair: beta = 2 a0
    for (const auto& spec :
         {FieldSpec::nondegenerate_cyclotomic(3), FieldSpec::degenerate_prime(2)}) {
        for (const auto& line :
             modified_relation_suite(spec, 2, BlockLabel{{0, 2}}, 120)) {
            INFO(line.relation << " at " << residue_str(line.seq) << " " << line.witness);
            CHECK(line.passed);
        }
    }
}

TEST_CASE("theta preimages evaluate to the KLR images") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep = get_regular_rep(F, 2, Weight({0, 1}, 3));
    KLRImageSet images(rep, kBeta);
    ModEvaluator ev(rep, kBeta);
    FieldElement q = F.q();
    for (const auto& i : images.sequences()) {
        // y_s e(i) as an expression: e(i)(1 - q^{-i_s} X_s) e(i)
        for (int s = 1; s <= 2; ++s) {
            auto expr = ModExpr::sum(
                {ModExpr::idem(i),
                 ModExpr::scalar(-F.q_pow(-i[s - 1]), ModExpr::xvar(s, 1, i))});
            CHECK(ev.eval(expr) == images.Y(i, s));
        }
        // psi_1 e(i), the i_1 != i_2, i_2 + 1 case of the isomorphism:
        // (T(X_2 - X_1) + (1-q)X_2)(X_1 - q X_2)^{-1} e(i)
        if (residue_reduce(i[0] - i[1], 3) != 0 &&
            residue_reduce(i[0] - i[1] - 1, 3) != 0) {
            auto diff = ModExpr::sum(
                {ModExpr::xvar(2, 1, i), ModExpr::scalar(-F.one(), ModExpr::xvar(1, 1, i))});
            auto expr = ModExpr::sum({ModExpr::prod({ModExpr::gen(1, i), diff}),
                                      ModExpr::scalar(F.one() - q, ModExpr::xvar(2, 1, i))}) *
                        ModExpr::inv_atom(1, 2, 1, i, 3);
            CHECK(ev.eval(expr) == images.PSI(i, 1));
        }
    }
}

TEST_CASE("basis independence") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    // n = 1: distinct Laurent monomials
    auto r1 = basis_independence(F, 1, BlockLabel{{0, 1}}, 2, 1);
    CHECK(r1.independent);
    // the acceptance family
    auto r2 = basis_independence(F, 2, kBeta, 1, 1);
    CHECK(r2.independent);
    CHECK(r2.members == 48);
    // degenerate side-condition b_{r,s} > 0 only if a_s = 0
    auto D = FieldSpec::degenerate_prime(2);
    auto r3 = basis_independence(D, 2, kBeta, 1, 1);
    CHECK(r3.independent);
}

TEST_CASE("the rank routine detects an injected duplicate") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    ModAction act(F, 2);
    auto fam = basis_family(F, 2, kBeta, 1, 0);
    // evaluate the family twice over the duplicate of its first member
    detail::Expressor ech(64);
    ResidueSeq i = fam[0].seq;
    auto v1 = act.act(fam[0].expr, ModVec::unit(F, 2, i));
    auto v2 = act.act(fam[0].expr, ModVec::unit(F, 2, i));
    // flatten on a shared key set
    std::map<std::pair<ResidueSeq, std::vector<int>>, std::size_t> column;
    auto flatten = [&](const ModVec& v) {
        std::vector<FieldElement> dense(64, F.zero());
        for (const auto& [comp, f] : v.components())
            for (const auto& [exp, c] : f.num.terms()) {
                auto key = std::make_pair(comp, exp);
                auto it = column.find(key);
                if (it == column.end()) it = column.emplace(key, column.size()).first;
                dense[it->second] = c;
            }
        return dense;
    };
    CHECK(ech.insert(flatten(v1)));
    CHECK_FALSE(ech.insert(flatten(v2)));
}

TEST_CASE("center candidates") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    // power sum is central
    std::map<ResidueSeq, MultiPoly> fsym;
    for (const auto& i : sequences_of_block(kBeta)) {
        auto t1 = MultiPoly::variable(2, true, 1, F.one());
        auto t2 = MultiPoly::variable(2, true, 2, F.one());
        fsym.emplace(i, t1 + t2);
    }
    auto z = center_candidate(F, 2, kBeta, fsym, {});
    CHECK(is_central_probe(F, 2, kBeta, z, 120).central);

    // with a nontrivial inverse-difference prefactor it stays central
    std::map<ResidueSeq, int> exps;
    exps[ResidueSeq{0, 1}] = 1;
    auto z2 = center_candidate(F, 2, kBeta, fsym, exps);
    CHECK(is_central_probe(F, 2, kBeta, z2, 120).central);

    // X_1 e(beta) is not central; the witness names a generator
    auto rep = is_central_probe(F, 2, kBeta, global_X(1, 1, kBeta), 120);
    CHECK_FALSE(rep.central);
    CHECK(rep.witness.substr(0, 3) == "T_1");

    // n = 1: everything commutes
    BlockLabel b1{{0, 1}};
    auto repn1 = is_central_probe(F, 1, b1, global_X(1, 1, b1), 120);
    CHECK(repn1.central);

    // malformed symmetric tuples are rejected
    std::map<ResidueSeq, MultiPoly> badf;
    for (const auto& i : sequences_of_block(kBeta))
        badf.emplace(i, MultiPoly::variable(2, true, 1, F.one()));
    CHECK_THROWS_AS(center_candidate(F, 2, kBeta, badf, {}), std::invalid_argument);
}
