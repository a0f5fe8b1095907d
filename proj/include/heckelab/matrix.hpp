#pragma once

// Dense exact matrices over a FieldElement kind, with Gaussian elimination
// (rank, kernel, inverse with singularity witness, linear solve), minimal
// polynomials via Krylov subspaces, and generalized eigenspace projectors
// through partial-fraction idempotent polynomials.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "heckelab/field.hpp"

namespace heckelab {

/// Dense univariate polynomial over the exact field, coefficient of x^k at
/// index k, no trailing zeros.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<FieldElement> c) : c_(std::move(c)) { trim(); }
    static UniPoly constant(FieldElement v) { return UniPoly({std::move(v)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& leading() const { return c_.back(); }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<FieldElement> r = c_.size() >= o.c_.size() ? c_ : o.c_;
        const auto& s = c_.size() >= o.c_.size() ? o.c_ : c_;
        for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
        return UniPoly(std::move(r));
    }
    UniPoly operator-(const UniPoly& o) const { return *this + o.scaled_neg(); }
    UniPoly scaled_neg() const {
        std::vector<FieldElement> r(c_);
        for (auto& x : r) x = -x;
        return UniPoly(std::move(r));
    }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<FieldElement> r(c_.size() + o.c_.size() - 1,
                                    FieldElement::zero_like(c_[0]));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return UniPoly(std::move(r));
    }
    UniPoly scaled(const FieldElement& f) const {
        std::vector<FieldElement> r(c_);
        for (auto& x : r) x = x * f;
        return UniPoly(std::move(r));
    }

    std::pair<UniPoly, UniPoly> divmod(const UniPoly& b) const {
        if (b.is_zero()) throw std::logic_error("UniPoly: division by zero");
        std::vector<FieldElement> rem(c_);
        std::vector<FieldElement> quo;
        if (rem.size() >= b.c_.size())
            quo.assign(rem.size() - b.c_.size() + 1, FieldElement::zero_like(b.c_[0]));
        FieldElement lcinv = b.leading().inverse();
        while (rem.size() >= b.c_.size()) {
            FieldElement f = rem.back() * lcinv;
            std::size_t shift = rem.size() - b.c_.size();
            quo[shift] += f;
            for (std::size_t i = 0; i < b.c_.size(); ++i) rem[shift + i] -= f * b.c_[i];
            while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        }
        return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inverse());
    }

    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    static UniPoly lcm(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        UniPoly g = gcd(a, b);
        return (a * b).divmod(g).first.monic();
    }

    /// (g, u, v) with u*a + v*b = g monic.
    static std::tuple<UniPoly, UniPoly, UniPoly> ext_gcd(UniPoly a, UniPoly b) {
        FieldElement one = !a.is_zero() ? FieldElement::one_like(a.c_[0])
                                        : FieldElement::one_like(b.c_[0]);
        UniPoly u0 = constant(one), v0, u1, v1 = constant(one);
        while (!b.is_zero()) {
            auto [q, r] = a.divmod(b);
            UniPoly u2 = u0 - q * u1;
            UniPoly v2 = v0 - q * v1;
            a = std::move(b);
            b = std::move(r);
            u0 = std::move(u1);
            v0 = std::move(v1);
            u1 = std::move(u2);
            v1 = std::move(v2);
        }
        if (!a.is_zero()) {
            FieldElement inv = a.leading().inverse();
            a = a.scaled(inv);
            u0 = u0.scaled(inv);
            v0 = v0.scaled(inv);
        }
        return {a, u0, v0};
    }

    FieldElement eval(const FieldElement& x) const {
        if (is_zero()) return FieldElement::zero_like(x);
        FieldElement acc = c_.back();
        for (int k = static_cast<int>(c_.size()) - 2; k >= 0; --k) acc = acc * x + c_[k];
        return acc;
    }

    /// Multiplicity of the root x0 (how many times (t - x0) divides).
    int root_multiplicity(const FieldElement& x0) const {
        UniPoly p = *this;
        UniPoly lin({-x0, FieldElement::one_like(x0)});
        int m = 0;
        while (!p.is_zero() && p.eval(x0).is_zero()) {
            p = p.divmod(lin).first;
            ++m;
        }
        return m;
    }

private:
    std::vector<FieldElement> c_;
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(std::size_t rows, std::size_t cols, const FieldElement& zero)
        : rows_(rows), cols_(cols), a_(rows * cols, zero) {}

    static DenseMatrix identity(std::size_t n, const FieldElement& one) {
        DenseMatrix m(n, n, FieldElement::zero_like(one));
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldElement& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    std::size_t nonzero_count() const {
        std::size_t c = 0;
        for (const auto& x : a_)
            if (!x.is_zero()) ++c;
        return c;
    }

    bool operator==(const DenseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const DenseMatrix& o) const { return !(*this == o); }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        shape_check(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        shape_check(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }

    DenseMatrix operator-() const {
        DenseMatrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::logic_error("DenseMatrix: shape mismatch in mul");
        FieldElement z = a.a_.empty() ? (b.a_.empty() ? FieldElement() : FieldElement::zero_like(b.a_[0]))
                                      : FieldElement::zero_like(a.a_[0]);
        DenseMatrix r(a.rows_, b.cols_, z);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const FieldElement& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const FieldElement& bkj = b.at(k, j);
                    if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    DenseMatrix scaled(const FieldElement& f) const {
        DenseMatrix r = *this;
        for (auto& x : r.a_) x = x * f;
        return r;
    }

    std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const {
        if (v.size() != cols_) throw std::logic_error("DenseMatrix: apply shape");
        std::vector<FieldElement> r(rows_, FieldElement::zero_like(v.empty() ? a_[0] : v[0]));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
                if (!at(i, k).is_zero() && !v[k].is_zero()) r[i] += at(i, k) * v[k];
        return r;
    }

    DenseMatrix pow(unsigned long k, const FieldElement& one) const {
        DenseMatrix r = identity(rows_, one), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }

    std::size_t rank() const { return DenseMatrix(*this).eliminate(); }

    /// Basis of the right kernel, returned as columns.
    std::vector<std::vector<FieldElement>> kernel_basis() const {
        DenseMatrix m = *this;
        std::vector<std::size_t> pivot_col;
        m.eliminate(&pivot_col);
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        FieldElement zero = a_.empty() ? FieldElement() : FieldElement::zero_like(a_[0]);
        FieldElement one = FieldElement::one_like(zero);
        std::vector<std::vector<FieldElement>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<FieldElement> v(cols_, zero);
            v[free] = one;
            // back-substitute using the reduced rows (pivot entries are 1)
            for (std::size_t r = 0; r < pivot_col.size(); ++r)
                v[pivot_col[r]] = -m.at(r, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    struct InverseResult;
    InverseResult try_inverse() const;

    /// Minimal polynomial (monic) via Krylov subspaces seeded by standard
    /// basis vectors; the result is the lcm of the local minimal polynomials
    /// and is certified by an annihilation check.
    UniPoly min_poly() const {
        if (rows_ != cols_) throw std::logic_error("min_poly: non-square matrix");
        FieldElement zero = FieldElement::zero_like(a_[0]);
        FieldElement one = FieldElement::one_like(zero);
        UniPoly m = UniPoly::constant(one);
        for (std::size_t seed = 0; seed < rows_; ++seed) {
            if (static_cast<std::size_t>(m.degree()) == rows_) break;
            std::vector<FieldElement> v(rows_, zero);
            v[seed] = one;
            UniPoly local = local_min_poly(v);
            m = UniPoly::lcm(m, local);
        }
        if (!eval_poly(m).is_zero())
            throw std::logic_error("min_poly: certification failed (engine bug)");
        return m;
    }

    DenseMatrix eval_poly(const UniPoly& p) const {
        FieldElement zero = FieldElement::zero_like(a_[0]);
        FieldElement one = FieldElement::one_like(zero);
        DenseMatrix acc(rows_, rows_, zero);
        const auto& c = p.coeffs();
        for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
            acc = acc * (*this);
            for (std::size_t i = 0; i < rows_; ++i) acc.at(i, i) += c[k];
        }
        return acc;
    }

    /// Row-echelon elimination in place (forward + back substitution to RREF
    /// on the first `limit_cols` columns; full width when 0).  Returns rank,
    /// optionally reporting pivot columns.
    std::size_t eliminate(std::vector<std::size_t>* pivot_cols = nullptr,
                          std::size_t limit_cols = 0) {
        std::size_t w = limit_cols ? limit_cols : cols_;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < w && rank < rows_; ++col) {
            std::size_t sel = rank;
            while (sel < rows_ && at(sel, col).is_zero()) ++sel;
            if (sel == rows_) continue;
            swap_rows(sel, rank);
            FieldElement inv = at(rank, col).inverse();
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(rank, j).is_zero()) at(rank, j) = at(rank, j) * inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rank || at(r, col).is_zero()) continue;
                FieldElement f = at(r, col);
                for (std::size_t j = 0; j < cols_; ++j)
                    if (!at(rank, j).is_zero()) at(r, j) -= f * at(rank, j);
            }
            if (pivot_cols) pivot_cols->push_back(col);
            ++rank;
        }
        return rank;
    }

private:
    std::size_t rows_, cols_;
    std::vector<FieldElement> a_;

    void shape_check(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::logic_error("DenseMatrix: shape mismatch");
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    UniPoly local_min_poly(std::vector<FieldElement> v) const {
        FieldElement zero = FieldElement::zero_like(a_[0]);
        FieldElement one = FieldElement::one_like(zero);
        // Krylov vectors fed through an incremental elimination; record the
        // combination that expresses the first dependent power.
        std::vector<std::vector<FieldElement>> rows;    // echelon rows
        std::vector<std::vector<FieldElement>> combos;  // same combos over krylov
        std::vector<std::size_t> pivots;
        for (std::size_t step = 0;; ++step) {
            std::vector<FieldElement> cur = v;
            std::vector<FieldElement> combo(step + 1, zero);
            combo[step] = one;
            // reduce against existing echelon rows
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const FieldElement& lead = cur[pivots[r]];
                if (lead.is_zero()) continue;
                FieldElement f = lead;
                for (std::size_t j = 0; j < cols_; ++j)
                    if (!rows[r][j].is_zero()) cur[j] -= f * rows[r][j];
                for (std::size_t j = 0; j < combos[r].size() && j < combo.size(); ++j)
                    combo[j] -= f * combos[r][j];
            }
            std::size_t p = 0;
            while (p < cols_ && cur[p].is_zero()) ++p;
            if (p == cols_) {
                // dependence found: combo gives the monic minimal polynomial
                std::vector<FieldElement> c(combo.begin(), combo.end());
                return UniPoly(std::move(c)).monic();
            }
            FieldElement inv = cur[p].inverse();
            for (auto& x : cur) x = x * inv;
            for (auto& x : combo) x = x * inv;
            rows.push_back(std::move(cur));
            combo.resize(rows_ + 1, zero);
            combos.push_back(std::move(combo));
            pivots.push_back(p);
            v = apply(v);
            if (step > rows_) throw std::logic_error("local_min_poly: no dependence (bug)");
        }
    }
};

struct DenseMatrix::InverseResult {
    std::optional<DenseMatrix> inverse;
    std::optional<std::vector<FieldElement>> kernel_witness;
};

inline DenseMatrix::InverseResult DenseMatrix::try_inverse() const {
    if (rows_ != cols_) throw std::logic_error("inverse: non-square matrix");
    InverseResult out;
    FieldElement zero = FieldElement::zero_like(a_[0]);
    FieldElement one = FieldElement::one_like(zero);
    DenseMatrix aug(rows_, 2 * cols_, zero);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = one;
    }
    std::vector<std::size_t> pivots;
    aug.eliminate(&pivots, cols_);
    if (pivots.size() < rows_) {
        auto kb = kernel_basis();
        out.kernel_witness = kb.empty() ? std::vector<FieldElement>() : kb.front();
        return out;
    }
    DenseMatrix inv(rows_, cols_, zero);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    out.inverse = std::move(inv);
    return out;
}

/// Columns of M spanning its column space (pivot columns of the RREF).
inline DenseMatrix column_space_basis(const DenseMatrix& M) {
    DenseMatrix work = M;
    std::vector<std::size_t> pivots;
    work.eliminate(&pivots);
    FieldElement zero = M.rows() && M.cols() ? FieldElement::zero_like(M.at(0, 0))
                                             : FieldElement();
    DenseMatrix C(M.rows(), pivots.size(), zero);
    for (std::size_t j = 0; j < pivots.size(); ++j)
        for (std::size_t i = 0; i < M.rows(); ++i) C.at(i, j) = M.at(i, pivots[j]);
    return C;
}

/// Solve C*X = B columnwise; C must have full column rank and the system must
/// be consistent (throws otherwise).
inline DenseMatrix solve_columns(const DenseMatrix& C, const DenseMatrix& B) {
    if (C.rows() != B.rows()) throw std::logic_error("solve_columns: shape");
    FieldElement zero = FieldElement::zero_like(C.at(0, 0));
    DenseMatrix aug(C.rows(), C.cols() + B.cols(), zero);
    for (std::size_t i = 0; i < C.rows(); ++i) {
        for (std::size_t j = 0; j < C.cols(); ++j) aug.at(i, j) = C.at(i, j);
        for (std::size_t j = 0; j < B.cols(); ++j) aug.at(i, C.cols() + j) = B.at(i, j);
    }
    std::vector<std::size_t> pivots;
    aug.eliminate(&pivots, C.cols());
    if (pivots.size() != C.cols()) throw std::logic_error("solve_columns: rank deficient");
    // consistency: rows beyond the pivots must have zero right-hand side
    for (std::size_t i = pivots.size(); i < C.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j)
            if (!aug.at(i, C.cols() + j).is_zero())
                throw std::logic_error("solve_columns: inconsistent system");
    DenseMatrix X(C.cols(), B.cols(), zero);
    for (std::size_t i = 0; i < C.cols(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) X.at(i, j) = aug.at(i, C.cols() + j);
    return X;
}

struct CornerInverseResult {
    std::optional<DenseMatrix> inverse;  // left-mult operator of the corner inverse
    std::string witness;
};

/// Inverse of the element z inside the corner algebra e H e, at the level of
/// left-multiplication operators: given M = M_{z e} and E = M_e (an
/// idempotent operator), returns M_u with M M_u = E = (M_u M) E.  Fails with
/// a witness when z e is singular on the image of e.
inline CornerInverseResult corner_inverse(const DenseMatrix& M, const DenseMatrix& E) {
    CornerInverseResult out;
    if (E.is_zero()) {
        out.witness = "zero idempotent block";
        return out;
    }
    DenseMatrix C = column_space_basis(E);
    DenseMatrix A = solve_columns(C, M * C);
    auto inv = A.try_inverse();
    if (!inv.inverse) {
        out.witness = "singular on block (kernel witness exists)";
        return out;
    }
    DenseMatrix Y = solve_columns(C, E);
    DenseMatrix Mu = C * (*inv.inverse) * Y;
    if (M * Mu != E || (Mu * M) * E != E)
        throw std::logic_error("corner_inverse: verification failed (engine bug)");
    out.inverse = std::move(Mu);
    return out;
}

/// The partial-fraction idempotent polynomial E such that E(M) projects onto
/// the generalized eigenspace of `eigenvalue`, given the (fully split)
/// minimal polynomial of M.  Returns the zero polynomial when the eigenvalue
/// does not occur.
inline UniPoly spectral_projector_poly(const UniPoly& minpoly, const FieldElement& eigenvalue) {
    int mult = minpoly.root_multiplicity(eigenvalue);
    if (mult == 0) return UniPoly();
    FieldElement one = FieldElement::one_like(eigenvalue);
    UniPoly lin({-eigenvalue, one});
    UniPoly linm = UniPoly::constant(one);
    for (int k = 0; k < mult; ++k) linm = linm * lin;
    UniPoly rest = minpoly.divmod(linm).first;  // m / (t-lam)^mult, coprime to linm
    auto [g, u, v] = UniPoly::ext_gcd(rest, linm);
    (void)v;
    if (g.degree() != 0) throw std::logic_error("spectral projector: factors not coprime");
    // E := u * rest mod minpoly; E = 1 mod (t-lam)^mult, 0 mod rest
    return (u * rest).divmod(minpoly).second;
}

}  // namespace heckelab
