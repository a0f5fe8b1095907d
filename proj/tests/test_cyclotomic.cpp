// The certified cyclotomic quotients: projection, tableau oracle,
// idempotents (two constructions), blocks and the maps between levels.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "heckelab/cyclotomic.hpp"
#include "heckelab/grid.hpp"

using namespace heckelab;

TEST_CASE("projection basics") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep1 = get_regular_rep(F, 1, Weight({0}, 3));
    // level 1, kappa = 0: X_1 projects to q^0 = 1
    auto img = rep1->project(AffineElement::gen_X(F, 1, 1));
    CHECK(img == rep1->one_element());

    auto D = FieldSpec::degenerate_prime(2);
    auto rep2 = get_regular_rep(D, 2, Weight({0}, 2));
    // x_2 |-> s_1 when L_1 = 0
    auto x2 = rep2->project(AffineElement::gen_X(D, 2, 2));
    auto s1 = rep2->project(AffineElement::gen_T(D, 2, 1));
    CHECK(x2 == s1);
}

TEST_CASE("dimension law at small sizes") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    CHECK(get_regular_rep(F, 2, Weight({0, 0}, 3))->dim() == 8);
    CHECK(get_regular_rep(F, 2, Weight({0}, 3))->dim() == 2);
    CHECK(get_regular_rep(F, 3, Weight({0, 1}, 3))->dim() == 48);
}

TEST_CASE("projection is multiplicative", "[property]") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep = get_regular_rep(F, 2, Weight({0, 1}, 3));
    std::mt19937_64 rng(42);
    for (int t = 0; t < 15; ++t) {
        auto u = random_affine(F, 2, rng);
        auto v = random_affine(F, 2, rng);
        CHECK(rep->project(u * v) == rep->project(u) * rep->project(v));
    }
}

TEST_CASE("tableau residue sequences") {
    CHECK(tableau_residue_sequences(2, Weight({0}, 3)) ==
          std::set<ResidueSeq>{{0, 1}, {0, 2}});
    CHECK(tableau_residue_sequences(1, Weight({2}, 3)) == std::set<ResidueSeq>{{2}});
    CHECK(tableau_residue_sequences(2, Weight({0}, 2)) == std::set<ResidueSeq>{{0, 1}});
}

TEST_CASE("idempotents: spectral projectors") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep1 = get_regular_rep(F, 1, Weight({0}, 3));
    CHECK(rep1->idempotent_matrix({0}) == DenseMatrix::identity(1, F.one()));
    CHECK(rep1->idempotent_matrix({1}).is_zero());

    auto rep = get_regular_rep(F, 2, Weight({0}, 3));
    auto e01 = rep->idempotent_matrix({0, 1});
    auto e02 = rep->idempotent_matrix({0, 2});
    CHECK(e01.rank() == 1);
    CHECK(e02.rank() == 1);
    CHECK((e01 * e02).is_zero());
    CHECK(e01 + e02 == DenseMatrix::identity(rep->dim(), F.one()));
    // L_k commutes with every e(i)
    for (int k = 1; k <= 2; ++k) {
        CHECK(rep->mat_L(k) * e01 == e01 * rep->mat_L(k));
    }
}

TEST_CASE("sum of idempotents is the identity on the grid") {
    for (const auto& g : default_grid()) {
        if (g.n > 2) continue;  // the larger points are covered by the acceptance run
        auto rep = get_regular_rep(g.spec, g.n, g.lam);
        DenseMatrix sum(rep->dim(), rep->dim(), g.spec.zero());
        for (const auto& seq : rep->nonzero_idempotent_sequences())
            sum += rep->idempotent_matrix(seq);
        CHECK(sum == DenseMatrix::identity(rep->dim(), g.spec.one()));
    }
}

TEST_CASE("nilpotency of (L_k - q_{i_k}) e(i)") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep = get_regular_rep(F, 3, Weight({0, 1}, 3));
    for (const auto& seq : rep->nonzero_idempotent_sequences()) {
        const DenseMatrix& E = rep->idempotent_matrix(seq);
        for (int k = 1; k <= 3; ++k) {
            DenseMatrix nil =
                (rep->mat_L(k) - DenseMatrix::identity(rep->dim(), F.q_residue(seq[k - 1]))) * E;
            DenseMatrix p = nil;
            for (std::size_t c = 1; c < rep->dim() && !p.is_zero(); ++c) p = p * nil;
            CHECK(p.is_zero());
        }
    }
}

TEST_CASE("explicit idempotent formula") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep = get_regular_rep(F, 2, Weight({0}, 3));
    int N = rep->nilpotency_bound();
    auto J = rep->spectrum_residues();
    for (const auto& seq : rep->nonzero_idempotent_sequences())
        CHECK(paper_idempotent(*rep, seq, N, J) == rep->idempotent_matrix(seq));
    // outside the joint spectrum the formula collapses to zero
    CHECK(paper_idempotent(*rep, {1, 1}, N, J).is_zero());
    // independence of N: the paper's bound l^n n! is accepted too
    CHECK(paper_idempotent(*rep, {0, 1}, 3, J) == rep->idempotent_matrix({0, 1}));
}

TEST_CASE("blocks") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep = get_regular_rep(F, 2, Weight({0}, 3));
    auto blocks = compute_blocks(*rep);
    REQUIRE(blocks.size() == 2);
    for (const auto& b : blocks) CHECK(b.dimension == 1);

    // n = 1: one block per residue of the weight
    auto rep1 = get_regular_rep(F, 1, Weight({0, 1}, 3));
    auto blocks1 = compute_blocks(*rep1);
    CHECK(blocks1.size() == 2);

    auto D = FieldSpec::degenerate_prime(2);
    auto rep2 = get_regular_rep(D, 2, Weight({0}, 2));
    auto blocks2 = compute_blocks(*rep2);
    REQUIRE(blocks2.size() == 1);
    CHECK(block_str(blocks2[0].beta) == "a0+a1");
}

TEST_CASE("pi between weights") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    auto rep2 = get_regular_rep(F, 1, Weight({0, 0}, 3));
    auto rep1 = get_regular_rep(F, 1, Weight({0}, 3));
    BetweenMap pi(rep2, rep1);
    // identity when the weights agree
    BetweenMap id(rep1, rep1);
    CHECK(id.apply(rep1->one_element()) == rep1->one_element());
    // L_1 |-> the scalar q^0
    auto L1 = rep2->project(AffineElement::gen_X(F, 1, 1));
    CHECK(pi.apply(L1) == rep1->one_element());

    // composition pi_{Lambda'} = pi_{Lambda,Lambda'} o pi_Lambda on random elements
    auto repB = get_regular_rep(F, 2, Weight({0, 1}, 3));
    auto repS = get_regular_rep(F, 2, Weight({0}, 3));
    BetweenMap piBS(repB, repS);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        auto u = random_affine(F, 2, rng);
        CHECK(piBS.apply(repB->project(u)) == repS->project(u));
    }
    // e(i) |-> e(i)
    for (const auto& seq : repS->nonzero_idempotent_sequences())
        CHECK(piBS.apply(repB->idempotent(seq)) == repS->idempotent(seq));
    // homomorphism on samples
    for (int t = 0; t < 10; ++t) {
        auto u = repB->project(random_affine(F, 2, rng));
        auto v = repB->project(random_affine(F, 2, rng));
        CHECK(piBS.apply(u * v) == piBS.apply(u) * piBS.apply(v));
    }
    CHECK_THROWS_AS(BetweenMap(repS, repB), std::invalid_argument);
}

TEST_CASE("fuel exhaustion reports the failure") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    CHECK_THROWS_AS(RegularRep(F, 2, Weight({0, 1}, 3), 0), QuotientError);
}
