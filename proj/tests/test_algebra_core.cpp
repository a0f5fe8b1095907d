// Ground fields, multivariate polynomials and exact linear algebra.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "heckelab/field.hpp"
#include "heckelab/matrix.hpp"
#include "heckelab/poly.hpp"

using namespace heckelab;

TEST_CASE("quantum integers") {
    auto F2 = FieldSpec::nondegenerate_cyclotomic(2);  // q = -1
    F2.validate();
    CHECK(F2.quantum_integer(2).is_zero());
    CHECK(F2.quantum_integer(1).is_one());

    auto F3 = FieldSpec::nondegenerate_cyclotomic(3);
    F3.validate();
    CHECK(F3.quantum_integer(3).is_zero());
    CHECK_FALSE(F3.quantum_integer(1).is_zero());
    CHECK_FALSE(F3.quantum_integer(2).is_zero());

    // F_5 with q = 4: quantum characteristic 2, computed by brute force order
    auto F5 = FieldSpec::nondegenerate_prime(5, 4);
    F5.validate();
    CHECK(F5.quantum_char() == 2);
    CHECK(F5.quantum_integer(2).is_zero());

    auto D = FieldSpec::degenerate_prime(3);
    D.validate();
    CHECK(D.quantum_integer(2) == D.integer(2));
    CHECK(D.quantum_integer(3).is_zero());

    auto Q2 = FieldSpec::nondegenerate_rational(mpq_class(2));
    Q2.validate();
    CHECK(Q2.quantum_char() == 0);
    for (unsigned k = 1; k <= 8; ++k) CHECK_FALSE(Q2.quantum_integer(k).is_zero());
}

TEST_CASE("q_residue") {
    auto F3 = FieldSpec::nondegenerate_cyclotomic(3);
    CHECK(F3.q_residue(0).is_one());
    CHECK(F3.q_residue(4) == F3.q_residue(1));  // well-defined on residues

    auto D3 = FieldSpec::degenerate_prime(3);
    CHECK(D3.q_residue(5) == D3.integer(2));

    auto F2 = FieldSpec::nondegenerate_cyclotomic(2);
    CHECK(F2.q_residue(1) == -F2.one());
}

TEST_CASE("field arithmetic is exact and canonical") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    FieldElement q = F.q();
    CHECK(q.pow(3).is_one());
    CHECK((q * q.inverse()).is_one());
    CHECK(q + q.pow(2) + F.one() == F.zero());  // 1 + q + q^2 = 0
    auto Fp = FieldSpec::degenerate_prime(7);
    FieldElement five = Fp.integer(5);
    CHECK((five * five.inverse()).is_one());
    CHECK(Fp.integer(12) == Fp.integer(5));
}

TEST_CASE("divided differences") {
    auto F = FieldSpec::degenerate_rationals();
    auto t1 = MultiPoly::variable(2, true, 1, F.one());
    auto t2 = MultiPoly::variable(2, true, 2, F.one());
    CHECK(t1.divided_difference(1) == MultiPoly::constant(2, true, F.one()));
    CHECK((t1 * t2).divided_difference(1).is_zero());
    // (t2^2 - t1^2)/(t2 - t1): the multiplication oracle fixes the sign
    auto dd = (t1 * t1).divided_difference(1);
    CHECK(dd == t1 + t2);
    CHECK(dd * (t2 - t1) == t2 * t2 - t1 * t1);
    // Laurent: dd(t1^{-1}) = -1/(t1 t2)
    auto t1inv = MultiPoly::monomial(2, true, {-1, 0}, F.one());
    CHECK(t1inv.divided_difference(1) ==
          MultiPoly::monomial(2, true, {-1, -1}, -F.one()));
}

TEST_CASE("twisted Leibniz rule", "[property]") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    std::mt19937_64 rng(123);
    auto random_poly = [&](int n) {
        MultiPoly f(n, true);
        for (int t = 0; t < 3; ++t) {
            std::vector<int> e(n);
            for (auto& x : e) x = static_cast<int>(rng() % 5) - 2;
            f.add_term(e, F.integer(static_cast<long>(rng() % 7) - 3));
        }
        return f;
    };
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3;
        int r = 1 + static_cast<int>(rng() % 2);
        MultiPoly f = random_poly(n), g = random_poly(n);
        auto lhs = (f * g).divided_difference(r);
        auto rhs = f.divided_difference(r) * g + f.swapped(r) * g.divided_difference(r);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("symmetric group action on polynomials", "[property]") {
    auto F = FieldSpec::degenerate_rationals();
    std::mt19937_64 rng(7);
    auto perms = Perm::all(3);
    for (int trial = 0; trial < 25; ++trial) {
        MultiPoly f(3, true);
        for (int t = 0; t < 3; ++t) {
            std::vector<int> e(3);
            for (auto& x : e) x = static_cast<int>(rng() % 5) - 2;
            f.add_term(e, F.integer(static_cast<long>(rng() % 9) - 4));
        }
        const Perm& w = perms[rng() % perms.size()];
        const Perm& v = perms[rng() % perms.size()];
        CHECK(f.permuted(v).permuted(w) == f.permuted(w * v));
        CHECK(MultiPoly::variable(3, true, 1, F.one()).permuted(Perm::transposition(3, 1)) ==
              MultiPoly::variable(3, true, 2, F.one()));
    }
}

TEST_CASE("matrix kit") {
    auto F = FieldSpec::degenerate_rationals();
    DenseMatrix id2 = DenseMatrix::identity(2, F.one());
    auto mp = id2.min_poly();
    CHECK(mp.degree() == 1);  // t - 1
    CHECK(mp.eval(F.one()).is_zero());

    DenseMatrix s1(2, 2, F.zero());
    s1.at(0, 1) = F.one();
    s1.at(1, 0) = F.one();
    auto mp2 = s1.min_poly();
    CHECK(mp2.degree() == 2);  // t^2 - 1 by direct annihilation
    CHECK((s1 * s1 - id2).is_zero());
    CHECK(mp2.eval(F.one()).is_zero());
    CHECK(mp2.eval(-F.one()).is_zero());

    auto inv = s1.try_inverse();
    REQUIRE(inv.inverse);
    CHECK(*inv.inverse * s1 == id2);

    DenseMatrix sing(2, 2, F.zero());
    sing.at(0, 0) = F.one();
    sing.at(0, 1) = F.one();
    sing.at(1, 0) = F.one();
    sing.at(1, 1) = F.one();
    auto r = sing.try_inverse();
    CHECK_FALSE(r.inverse);
    REQUIRE(r.kernel_witness);
    auto w = *r.kernel_witness;
    auto img = sing.apply(w);
    for (const auto& x : img) CHECK(x.is_zero());
}

TEST_CASE("rank + kernel dimension = columns", "[property]") {
    auto F = FieldSpec::nondegenerate_cyclotomic(3);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t rows = 3 + rng() % 3, cols = 3 + rng() % 3;
        DenseMatrix m(rows, cols, F.zero());
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = F.integer(static_cast<long>(rng() % 5) - 2);
        CHECK(m.rank() + m.kernel_basis().size() == cols);
        for (const auto& v : m.kernel_basis())
            for (const auto& x : m.apply(v)) CHECK(x.is_zero());
    }
}

TEST_CASE("spectral projectors split the identity") {
    auto F = FieldSpec::degenerate_rationals();
    // permutation matrix of s_1: eigenvalues +-1
    DenseMatrix s1(2, 2, F.zero());
    s1.at(0, 1) = F.one();
    s1.at(1, 0) = F.one();
    auto mp = s1.min_poly();
    auto Pp = s1.eval_poly(spectral_projector_poly(mp, F.one()));
    auto Pm = s1.eval_poly(spectral_projector_poly(mp, -F.one()));
    CHECK(Pp * Pp == Pp);
    CHECK(Pm * Pm == Pm);
    CHECK((Pp * Pm).is_zero());
    CHECK(Pp + Pm == DenseMatrix::identity(2, F.one()));
    CHECK(spectral_projector_poly(mp, F.integer(5)).is_zero());
}
