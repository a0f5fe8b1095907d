#pragma once

// The cyclotomic quotients H_n^Lambda(q) and H_n^Lambda through a certified
// regular representation.  The quotient is constructed by linear algebra
// inside the affine algebra: let Z be the cyclotomic polynomial
// prod_l (X_1 - q^{kappa_l}) and let W be the span of the two-sided ideal
// generated by Z intersected with the exponent window V_m = {X^a T_w :
// 0 <= a_k <= m}, obtained by closing {Z} under generator multiplication.
// Reducing the Ariki-Koike monomials B = {L^a T_w : 0 <= a_k < l} modulo W
// yields candidate generator matrices, which are accepted only under a
// machine certificate:
//
//   (i)   the reductions of B stay linearly independent,
//   (ii)  every generator x basis product reduces into their span,
//   (iii) all defining relations hold as exact matrix identities, including
//         the cyclotomic relation,
//   (iv)  word consistency Phi(X^a T_w)(1) = basis vector of L^a T_w.
//
// W is a subspace of ker pi_Lambda by construction, so (i)+(ii) bound
// dim H_n^Lambda from above by l^n n!, while (iii)+(iv) exhibit a quotient of
// the presented algebra of exactly that dimension; together they certify that
// the matrices are the left regular representation of H_n^Lambda.

#include <deque>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckelab/affine.hpp"
#include "heckelab/field.hpp"
#include "heckelab/matrix.hpp"
#include "heckelab/weight.hpp"

namespace heckelab {

class QuotientError : public std::runtime_error {
public:
    explicit QuotientError(const std::string& what) : std::runtime_error(what) {}
};

class RegularRep;
using RegularRepPtr = std::shared_ptr<const RegularRep>;

/// Element of H_n^Lambda in Ariki-Koike coordinates: a vector over the
/// monomial basis L^a T_w, 0 <= a_k < level.
class CycElement {
public:
    CycElement() = default;
    CycElement(RegularRepPtr rep, std::vector<FieldElement> coords)
        : rep_(std::move(rep)), v_(std::move(coords)) {}

    const RegularRepPtr& rep() const { return rep_; }
    const std::vector<FieldElement>& coords() const { return v_; }
    bool is_zero() const {
        for (const auto& c : v_)
            if (!c.is_zero()) return false;
        return true;
    }

    CycElement operator+(const CycElement& o) const;
    CycElement operator-(const CycElement& o) const;
    CycElement operator*(const CycElement& o) const;
    CycElement scaled(const FieldElement& f) const;
    bool operator==(const CycElement& o) const;
    bool operator!=(const CycElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    RegularRepPtr rep_;
    std::vector<FieldElement> v_;
};

namespace detail {

// Incremental echelon with combination tracking: feed vectors, get canonical
// reductions and, for dependent vectors, the expressing coefficients.
class Expressor {
public:
    explicit Expressor(std::size_t width) : width_(width) {}

    std::size_t size() const { return rows_.size(); }

    /// Insert a spanning vector; returns false if dependent on earlier ones.
    bool insert(std::vector<FieldElement> v) {
        std::vector<FieldElement> combo(count_ + 1);
        for (auto& c : combo) c = FieldElement::zero_like(v[0]);
        combo[count_] = FieldElement::one_like(v[0]);
        ++count_;
        reduce(v, &combo);
        std::size_t p = 0;
        while (p < width_ && v[p].is_zero()) ++p;
        if (p == width_) return false;
        FieldElement inv = v[p].inverse();
        for (auto& x : v) x = x * inv;
        for (auto& x : combo) x = x * inv;
        pivots_.push_back(p);
        rows_.push_back(std::move(v));
        combos_.push_back(std::move(combo));
        return true;
    }

    /// Express v as a combination of the inserted vectors; nullopt if outside.
    std::optional<std::vector<FieldElement>> express(std::vector<FieldElement> v) const {
        FieldElement zero = FieldElement::zero_like(v[0]);
        std::vector<FieldElement> coeff(count_, zero);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const FieldElement& lead = v[pivots_[r]];
            if (lead.is_zero()) continue;
            FieldElement f = lead;
            for (std::size_t j = pivots_[r]; j < width_; ++j)
                if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
            for (std::size_t j = 0; j < combos_[r].size(); ++j)
                if (!combos_[r][j].is_zero()) coeff[j] += f * combos_[r][j];
        }
        for (const auto& x : v)
            if (!x.is_zero()) return std::nullopt;
        return coeff;
    }

private:
    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<std::vector<FieldElement>> rows_;
    std::vector<std::vector<FieldElement>> combos_;
    std::vector<std::size_t> pivots_;

    void reduce(std::vector<FieldElement>& v, std::vector<FieldElement>* combo) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const FieldElement& lead = v[pivots_[r]];
            if (lead.is_zero()) continue;
            FieldElement f = lead;
            for (std::size_t j = pivots_[r]; j < width_; ++j)
                if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
            if (combo)
                for (std::size_t j = 0; j < combos_[r].size() && j < combo->size(); ++j)
                    if (!combos_[r][j].is_zero()) (*combo)[j] -= f * combos_[r][j];
        }
    }
};

}  // namespace detail

class RegularRep : public std::enable_shared_from_this<RegularRep> {
public:
    struct Certificate {
        int window;            // exponent cap m actually used
        std::size_t ideal_rows;
        std::size_t relations_checked;
    };

    RegularRep(FieldSpec spec, int n, Weight lam, int fuel = 64)
        : spec_(std::move(spec)), n_(n), lam_(std::move(lam)) {
        if (lam_.level() < 1) throw std::invalid_argument("RegularRep: level must be >= 1");
        if (lam_.e() != spec_.quantum_char())
            throw std::invalid_argument("RegularRep: weight/field e mismatch");
        spec_.validate();
        int ell = lam_.level();
        std::string failure;
        for (int m = ell; m <= ell + 2; ++m) {
            if (fuel <= 0) break;
            if (try_build(m, fuel, &failure)) return;
        }
        throw QuotientError("cyclotomic quotient certification failed: " + failure);
    }

    const FieldSpec& spec() const { return spec_; }
    int n() const { return n_; }
    const Weight& weight() const { return lam_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<AffMono>& basis() const { return basis_; }
    const Certificate& certificate() const { return cert_; }

    /// Left multiplication matrix of T_r (non-degenerate) / s_r (degenerate).
    const DenseMatrix& mat_T(int r) const { return matT_.at(r - 1); }
    /// Left multiplication matrix of the Jucys-Murphy element L_k.
    const DenseMatrix& mat_L(int k) const { return matL_.at(k - 1); }
    /// Right multiplication matrices (columns b |-> b*g).
    const DenseMatrix& rmat_T(int r) const { return rmatT_.at(r - 1); }
    const DenseMatrix& rmat_L(int k) const { return rmatL_.at(k - 1); }

    const DenseMatrix& mat_L_inv(int k) const {
        std::lock_guard<std::recursive_mutex> lock(mtx_);
        auto& slot = matLinv_cache_[k];
        if (!slot) {
            auto r = mat_L(k).try_inverse();
            if (!r.inverse)
                throw QuotientError("L_" + std::to_string(k) + " is not invertible here");
            slot = std::make_unique<DenseMatrix>(std::move(*r.inverse));
        }
        return *slot;
    }

    const std::vector<FieldElement>& unit_vector() const { return unit_; }
    FieldElement field_zero() const { return spec_.zero(); }

    CycElement element(std::vector<FieldElement> coords) const {
        return CycElement(shared_from_this(), std::move(coords));
    }
    CycElement one_element() const { return element(unit_); }
    CycElement zero_element() const {
        return element(std::vector<FieldElement>(dim(), spec_.zero()));
    }

    /// Phi(X^a T_w) applied to a coordinate vector (rightmost factor first).
    std::vector<FieldElement> apply_monomial(const AffMono& m,
                                             std::vector<FieldElement> v) const {
        auto word = m.w.reduced_word();
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = mat_T(*it).apply(v);
        for (int k = 0; k < n_; ++k) {
            int a = m.exps[k];
            for (; a > 0; --a) v = mat_L(k + 1).apply(v);
            for (; a < 0; ++a) v = mat_L_inv(k + 1).apply(v);
        }
        return v;
    }

    /// pi_Lambda: image of an affine element, in Ariki-Koike coordinates.
    CycElement project(const AffineElement& u) const {
        if (u.n() != n_ || !(u.spec() == spec_))
            throw std::logic_error("project: operand from a different algebra");
        std::vector<FieldElement> acc(dim(), spec_.zero());
        for (const auto& [m, c] : u.terms()) {
            auto v = apply_monomial(m, unit_);
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += v[j] * c;
        }
        return element(std::move(acc));
    }

    /// z * X^a T_w via the right-multiplication matrices (X factors first,
    /// then the word of w left to right).
    std::vector<FieldElement> apply_monomial_right(const AffMono& m,
                                                   std::vector<FieldElement> v) const {
        for (int k = 0; k < n_; ++k)
            for (int a = 0; a < m.exps[k]; ++a) v = rmat_L(k + 1).apply(v);
        for (int r : m.w.reduced_word()) v = rmat_T(r).apply(v);
        return v;
    }

    /// Left multiplication matrix of an arbitrary element: column b is z*b.
    DenseMatrix left_mult_matrix(const CycElement& z) const {
        DenseMatrix M(dim(), dim(), spec_.zero());
        for (std::size_t col = 0; col < dim(); ++col) {
            std::vector<FieldElement> v = apply_monomial_right(basis_[col], z.coords());
            for (std::size_t rrow = 0; rrow < dim(); ++rrow) M.at(rrow, col) = v[rrow];
        }
        return M;
    }

    /// Right multiplication matrix: column b is b*z.
    DenseMatrix right_mult_matrix(const CycElement& z) const {
        DenseMatrix M(dim(), dim(), spec_.zero());
        for (std::size_t col = 0; col < dim(); ++col) {
            std::vector<FieldElement> v = apply_monomial(basis_[col], z.coords());
            for (std::size_t rrow = 0; rrow < dim(); ++rrow) M.at(rrow, col) = v[rrow];
        }
        return M;
    }

    /// Minimal polynomial of L_k on the regular representation (cached).
    const UniPoly& minpoly_L(int k) const {
        std::lock_guard<std::recursive_mutex> lock(mtx_);
        auto it = minpoly_cache_.find(k);
        if (it == minpoly_cache_.end())
            it = minpoly_cache_.emplace(k, mat_L(k).min_poly()).first;
        return it->second;
    }

    /// Residues j whose q_j occurs as an eigenvalue of some L_k (the set J).
    std::vector<long> spectrum_residues() const {
        std::set<long> out;
        for (int k = 1; k <= n_; ++k) {
            const UniPoly& mp = minpoly_L(k);
            for (long j : candidate_residues())
                if (mp.eval(spec_.q_residue(j)).is_zero()) out.insert(residue_reduce(j, spec_.quantum_char()));
        }
        return std::vector<long>(out.begin(), out.end());
    }

    /// Largest root multiplicity over all minimal polynomials: the measured
    /// nilpotency bound for the elements (L_k - q_{i_k}) e(i).
    int nilpotency_bound() const {
        int b = 1;
        for (int k = 1; k <= n_; ++k) {
            const UniPoly& mp = minpoly_L(k);
            for (long j : candidate_residues())
                b = std::max(b, mp.root_multiplicity(spec_.q_residue(j)));
        }
        return b;
    }

    /// Spectral projector e(i): joint generalized eigenspace of L_1..L_n for
    /// the eigenvalues q_{i_1}..q_{i_n}; the zero matrix when i is not in the
    /// joint spectrum.  Cached.
    const DenseMatrix& idempotent_matrix(const ResidueSeq& seq) const {
        if (static_cast<int>(seq.size()) != n_)
            throw std::logic_error("idempotent: residue sequence length != n");
        ResidueSeq key;
        for (long r : seq) key.push_back(residue_reduce(r, spec_.quantum_char()));
        std::lock_guard<std::recursive_mutex> lock(mtx_);
        auto it = idem_cache_.find(key);
        if (it != idem_cache_.end()) return it->second;
        DenseMatrix acc = DenseMatrix::identity(dim(), spec_.one());
        for (int r = 1; r <= n_; ++r) {
            acc = acc * projector_factor(r, key[r - 1]);
            if (acc.is_zero()) break;
        }
        return idem_cache_.emplace(std::move(key), std::move(acc)).first->second;
    }

    CycElement idempotent(const ResidueSeq& seq) const {
        return element(idempotent_matrix(seq).apply(unit_));
    }

    /// All residue sequences with e(i) != 0, found by pruned joint spectral
    /// search (independent of the tableau oracle).
    std::vector<ResidueSeq> nonzero_idempotent_sequences() const {
        std::vector<ResidueSeq> out;
        ResidueSeq prefix;
        DenseMatrix acc = DenseMatrix::identity(dim(), spec_.one());
        spectral_walk(1, prefix, acc, out);
        return out;
    }

    std::vector<long> candidate_residues() const {
        std::vector<long> out;
        unsigned e = spec_.quantum_char();
        if (e > 0) {
            for (long j = 0; j < static_cast<long>(e); ++j) out.push_back(j);
        } else {
            long lo = lam_.kappas().front(), hi = lam_.kappas().front();
            for (long k : lam_.kappas()) {
                lo = std::min(lo, k);
                hi = std::max(hi, k);
            }
            for (long j = lo - n_; j <= hi + n_; ++j) out.push_back(j);
        }
        return out;
    }

    std::string monomial_name(std::size_t idx) const {
        const AffMono& m = basis_.at(idx);
        std::string s;
        for (int k = 0; k < n_; ++k)
            if (m.exps[k])
                s += "L" + std::to_string(k + 1) +
                     (m.exps[k] == 1 ? "" : "^" + std::to_string(m.exps[k])) + "*";
        const char* Tn = spec_.degenerate() ? "s" : "T";
        auto word = m.w.reduced_word();
        for (int r : word) s += std::string(Tn) + std::to_string(r) + "*";
        if (s.empty()) return "1";
        s.pop_back();
        return s;
    }

private:
    FieldSpec spec_;
    int n_;
    Weight lam_;
    std::vector<AffMono> basis_;
    std::vector<FieldElement> unit_;
    std::vector<DenseMatrix> matT_, matL_, rmatT_, rmatL_;
    Certificate cert_{};
    mutable std::recursive_mutex mtx_;
    mutable std::map<int, UniPoly> minpoly_cache_;
    mutable std::map<ResidueSeq, DenseMatrix> idem_cache_;
    mutable std::map<int, std::unique_ptr<DenseMatrix>> matLinv_cache_;

    // e(i)-factor for position r, eigenvalue q_j; cached per (r, j).
    mutable std::map<std::pair<int, long>, DenseMatrix> factor_cache_;
    const DenseMatrix& projector_factor(int r, long j) const {
        std::lock_guard<std::recursive_mutex> lock(mtx_);
        auto key = std::make_pair(r, j);
        auto it = factor_cache_.find(key);
        if (it != factor_cache_.end()) return it->second;
        const UniPoly& mp = minpoly_L(r);
        UniPoly proj = spectral_projector_poly(mp, spec_.q_residue(j));
        DenseMatrix P = proj.is_zero() ? DenseMatrix(dim(), dim(), spec_.zero())
                                       : mat_L(r).eval_poly(proj);
        return factor_cache_.emplace(key, std::move(P)).first->second;
    }

    void spectral_walk(int r, ResidueSeq& prefix, const DenseMatrix& acc,
                       std::vector<ResidueSeq>& out) const {
        if (r > n_) {
            out.push_back(prefix);
            return;
        }
        for (long j : candidate_residues()) {
            DenseMatrix next = acc * projector_factor(r, j);
            if (next.is_zero()) continue;
            prefix.push_back(j);
            spectral_walk(r + 1, prefix, next, out);
            prefix.pop_back();
        }
    }

    bool try_build(int m, int fuel, std::string* failure) {
        int ell = lam_.level();
        // V_m index
        std::map<AffMono, std::size_t> index;
        std::vector<AffMono> window;
        {
            std::vector<int> exps(n_, 0);
            auto perms = Perm::all(n_);
            bool done = false;
            while (!done) {
                for (const auto& w : perms) {
                    AffMono mo{exps, w};
                    index.emplace(mo, window.size());
                    window.push_back(mo);
                }
                int k = 0;
                while (k < n_) {
                    if (++exps[k] <= m) break;
                    exps[k] = 0;
                    ++k;
                }
                done = (k == n_);
            }
        }
        const std::size_t D = window.size();
        auto to_row = [&](const AffineElement& z) -> std::optional<std::vector<FieldElement>> {
            std::vector<FieldElement> row(D, spec_.zero());
            for (const auto& [mo, c] : z.terms()) {
                auto it = index.find(mo);
                if (it == index.end()) return std::nullopt;  // escapes the window
                row[it->second] = c;
            }
            return row;
        };
        auto from_row = [&](const std::vector<FieldElement>& row) {
            AffineElement z(spec_, n_);
            for (std::size_t j = 0; j < D; ++j)
                if (!row[j].is_zero()) z.add_term(window[j], row[j]);
            return z;
        };

        // echelonized ideal span W, pivot -> row
        std::vector<std::vector<FieldElement>> rows;
        std::vector<std::size_t> pivots;
        std::map<std::size_t, std::size_t> pivot_row;
        auto reduce = [&](std::vector<FieldElement>& v) {
            for (std::size_t col = 0; col < D; ++col) {
                if (v[col].is_zero()) continue;
                auto it = pivot_row.find(col);
                if (it == pivot_row.end()) continue;
                const auto& r = rows[it->second];
                FieldElement f = v[col];
                for (std::size_t j = col; j < D; ++j)
                    if (!r[j].is_zero()) v[j] -= f * r[j];
            }
        };
        auto insert = [&](std::vector<FieldElement> v) -> bool {
            reduce(v);
            std::size_t p = 0;
            while (p < D && v[p].is_zero()) ++p;
            if (p == D) return false;
            FieldElement inv = v[p].inverse();
            for (std::size_t j = p; j < D; ++j)
                if (!v[j].is_zero()) v[j] = v[j] * inv;
            pivot_row.emplace(p, rows.size());
            rows.push_back(std::move(v));
            pivots.push_back(p);
            return true;
        };

        // cyclotomic element Z
        AffineElement Z = AffineElement::one(spec_, n_);
        for (long kappa : lam_.kappas()) {
            AffineElement lin = AffineElement::gen_X(spec_, n_, 1) -
                                AffineElement::scalar(spec_, n_, spec_.q_residue(kappa));
            Z = Z * lin;
        }

        // two-sided closure of <Z> within the window
        std::deque<AffineElement> work;
        {
            auto rowZ = to_row(Z);
            if (!rowZ) {
                *failure = "cyclotomic element escapes window m=" + std::to_string(m);
                return false;
            }
            if (insert(*rowZ)) work.push_back(from_row(rows.back()));
        }
        long steps = 0;
        const long step_cap = static_cast<long>(fuel) * 4096;
        while (!work.empty()) {
            AffineElement z = std::move(work.front());
            work.pop_front();
            std::vector<AffineElement> products;
            for (int k = 1; k <= n_; ++k) {
                AffineElement xk = AffineElement::gen_X(spec_, n_, k);
                products.push_back(xk * z);
                products.push_back(z * xk);
            }
            for (int r = 1; r < n_; ++r) {
                AffineElement tr = AffineElement::gen_T(spec_, n_, r);
                products.push_back(tr * z);
                products.push_back(z * tr);
            }
            for (auto& p : products) {
                if (++steps > step_cap) {
                    *failure = "ideal closure exceeded fuel";
                    return false;
                }
                auto row = to_row(p);
                if (!row) continue;
                if (insert(std::move(*row))) work.push_back(from_row(rows.back()));
            }
        }

        // candidate basis B = exponents < ell, all permutations, sorted; the
        // empty monomial lands at index 0
        std::vector<AffMono> B;
        for (const auto& mo : window) {
            bool ok = true;
            for (int x : mo.exps) ok = ok && x < ell;
            if (ok) B.push_back(mo);
        }
        detail::Expressor expr(D);
        for (const auto& b : B) {
            std::vector<FieldElement> v(D, spec_.zero());
            v[index.at(b)] = spec_.one();
            reduce(v);
            if (!expr.insert(std::move(v))) {
                *failure = "basis monomial dependent mod ideal: " + describe_mono(b);
                return false;
            }
        }

        // generator action columns
        const std::size_t d = B.size();
        std::vector<DenseMatrix> mt, ml, rmt, rml;
        auto columns_for = [&](const AffineElement& g, bool left,
                               DenseMatrix& out) -> bool {
            out = DenseMatrix(d, d, spec_.zero());
            for (std::size_t col = 0; col < d; ++col) {
                AffineElement b = AffineElement::monomial(spec_, n_, B[col].exps, B[col].w,
                                                          spec_.one());
                AffineElement p = left ? g * b : b * g;
                auto row = to_row(p);
                if (!row) {
                    *failure = "product escapes window: " + describe_mono(B[col]);
                    return false;
                }
                reduce(*row);
                auto coords = expr.express(std::move(*row));
                if (!coords) {
                    *failure = "product does not reduce into basis span: " +
                               describe_mono(B[col]);
                    return false;
                }
                for (std::size_t rrow = 0; rrow < d; ++rrow) out.at(rrow, col) = (*coords)[rrow];
            }
            return true;
        };
        for (int r = 1; r < n_; ++r) {
            DenseMatrix Ml, Mr;
            AffineElement g = AffineElement::gen_T(spec_, n_, r);
            if (!columns_for(g, true, Ml) || !columns_for(g, false, Mr)) return false;
            mt.push_back(std::move(Ml));
            rmt.push_back(std::move(Mr));
        }
        for (int k = 1; k <= n_; ++k) {
            DenseMatrix Ml, Mr;
            AffineElement g = AffineElement::gen_X(spec_, n_, k);
            if (!columns_for(g, true, Ml) || !columns_for(g, false, Mr)) return false;
            ml.push_back(std::move(Ml));
            rml.push_back(std::move(Mr));
        }

        // certificate (iii): defining relations as matrix identities
        std::size_t checked = 0;
        auto ok = [&](const DenseMatrix& diff, const char* what) -> bool {
            ++checked;
            if (diff.is_zero()) return true;
            *failure = std::string("matrix relation failed: ") + what;
            return false;
        };
        DenseMatrix Id = DenseMatrix::identity(d, spec_.one());
        if (!spec_.degenerate()) {
            FieldElement q = spec_.q();
            for (int i = 0; i + 1 < n_; ++i)
                if (!ok(mt[i] * mt[i] - mt[i].scaled(q - spec_.one()) - Id.scaled(q),
                        "quadratic"))
                    return false;
            for (int i = 0; i + 2 < n_; ++i)
                if (!ok(mt[i] * mt[i + 1] * mt[i] - mt[i + 1] * mt[i] * mt[i + 1], "braid"))
                    return false;
        } else {
            for (int i = 0; i + 1 < n_; ++i)
                if (!ok(mt[i] * mt[i] - Id, "involution")) return false;
            for (int i = 0; i + 2 < n_; ++i)
                if (!ok(mt[i] * mt[i + 1] * mt[i] - mt[i + 1] * mt[i] * mt[i + 1], "braid"))
                    return false;
        }
        for (int i = 0; i + 1 < n_; ++i)
            for (int k = i + 2; k + 1 < n_; ++k)
                if (!ok(mt[i] * mt[k] - mt[k] * mt[i], "distant TT")) return false;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k)
                if (!ok(ml[i] * ml[k] - ml[k] * ml[i], "LL commute")) return false;
        for (int i = 0; i + 1 < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                if (k == i || k == i + 1) continue;
                if (!ok(mt[i] * ml[k] - ml[k] * mt[i], "distant TL")) return false;
            }
        for (int i = 0; i + 1 < n_; ++i) {
            if (!spec_.degenerate()) {
                if (!ok(ml[i + 1].scaled(spec_.q()) - mt[i] * ml[i] * mt[i],
                        "L_{i+1} = q^{-1} T_i L_i T_i"))
                    return false;
            } else {
                if (!ok(ml[i + 1] - (mt[i] * ml[i] * mt[i] + mt[i]),
                        "L_{i+1} = s_i L_i s_i + s_i"))
                    return false;
            }
        }
        DenseMatrix cyc = Id;
        for (long kappa : lam_.kappas()) {
            DenseMatrix lin = ml[0];
            FieldElement c = spec_.q_residue(kappa);
            for (std::size_t i = 0; i < d; ++i) lin.at(i, i) -= c;
            cyc = cyc * lin;
        }
        if (!ok(cyc, "cyclotomic relation")) return false;

        // certificate (iv): word consistency
        for (std::size_t col = 0; col < d; ++col) {
            std::vector<FieldElement> v(d, spec_.zero());
            v[0] = spec_.one();
            auto word = B[col].w.reduced_word();
            for (auto it = word.rbegin(); it != word.rend(); ++it) v = mt[*it - 1].apply(v);
            for (int k = 0; k < n_; ++k)
                for (int a = 0; a < B[col].exps[k]; ++a) v = ml[k].apply(v);
            for (std::size_t rrow = 0; rrow < d; ++rrow) {
                FieldElement want = rrow == col ? spec_.one() : spec_.zero();
                if (v[rrow] != want) {
                    *failure = "word consistency failed at " + describe_mono(B[col]);
                    return false;
                }
            }
        }

        basis_ = std::move(B);
        matT_ = std::move(mt);
        matL_ = std::move(ml);
        rmatT_ = std::move(rmt);
        rmatL_ = std::move(rml);
        unit_.assign(d, spec_.zero());
        unit_[0] = spec_.one();
        cert_ = Certificate{m, rows.size(), checked};
        return true;
    }

    std::string describe_mono(const AffMono& mo) const {
        std::ostringstream os;
        os << "L^(";
        for (int k = 0; k < n_; ++k) os << (k ? "," : "") << mo.exps[k];
        os << ") w=[";
        for (int k = 1; k <= n_; ++k) os << (k > 1 ? "," : "") << mo.w(k);
        os << "]";
        return os.str();
    }
};

inline CycElement CycElement::operator+(const CycElement& o) const {
    std::vector<FieldElement> v(v_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v_[i];
    return CycElement(rep_, std::move(v));
}
inline CycElement CycElement::operator-(const CycElement& o) const {
    std::vector<FieldElement> v(v_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v_[i];
    return CycElement(rep_, std::move(v));
}
inline CycElement CycElement::scaled(const FieldElement& f) const {
    std::vector<FieldElement> v(v_);
    for (auto& x : v) x = x * f;
    return CycElement(rep_, std::move(v));
}
inline CycElement CycElement::operator*(const CycElement& o) const {
    // z*w = sum_b z_b (b*w) = sum_b z_b Phi(b)(w)
    std::vector<FieldElement> acc(v_.size(), rep_->field_zero());
    for (std::size_t b = 0; b < v_.size(); ++b) {
        if (v_[b].is_zero()) continue;
        auto t = rep_->apply_monomial(rep_->basis()[b], o.v_);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i] * v_[b];
    }
    return CycElement(rep_, std::move(acc));
}
inline bool CycElement::operator==(const CycElement& o) const { return v_ == o.v_; }
inline std::string CycElement::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (v_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + v_[i].str() + ")*" + rep_->monomial_name(i);
    }
    return s;
}

/// Process-wide cache of regular representations keyed by (field, n, weight).
/// Construction for distinct keys runs outside the cache lock, so concurrent
/// grid tasks do not serialize; concurrent requests for the same key share
/// one construction through a future.
inline RegularRepPtr get_regular_rep(const FieldSpec& spec, int n, const Weight& lam,
                                     int fuel = 64) {
    static std::map<std::string, std::shared_future<RegularRepPtr>> cache;
    static std::mutex mtx;
    std::ostringstream key;
    key << spec.describe() << "|n=" << n << "|" << lam.str();
    std::shared_future<RegularRepPtr> fut;
    bool builder = false;
    std::promise<RegularRepPtr> prom;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key.str());
        if (it != cache.end()) {
            fut = it->second;
        } else {
            fut = prom.get_future().share();
            cache.emplace(key.str(), fut);
            builder = true;
        }
    }
    if (builder) {
        try {
            prom.set_value(std::make_shared<const RegularRep>(spec, n, lam, fuel));
        } catch (...) {
            prom.set_exception(std::current_exception());
        }
    }
    return fut.get();
}

/// The explicit idempotent formula: prod_r [prod_{j in J, j != i_r}
/// (1 - ((q_{i_r} - L_r)/(q_{i_r} - q_j))^N)]^N on the regular
/// representation.  Agrees with the spectral projector whenever N is at
/// least the measured nilpotency bound, for any J containing the joint
/// spectrum residues.
inline DenseMatrix paper_idempotent(const RegularRep& rep, const ResidueSeq& seq, int N,
                                    const std::vector<long>& J) {
    const FieldSpec& F = rep.spec();
    std::size_t d = rep.dim();
    DenseMatrix acc = DenseMatrix::identity(d, F.one());
    for (int r = 1; r <= rep.n(); ++r) {
        long ir = residue_reduce(seq[r - 1], F.quantum_char());
        DenseMatrix lr_factor = DenseMatrix::identity(d, F.one());
        for (long j : J) {
            if (residue_reduce(j - ir, F.quantum_char()) == 0) continue;
            FieldElement denom = F.q_residue(ir) - F.q_residue(j);
            DenseMatrix M = (DenseMatrix::identity(d, F.q_residue(ir)) - rep.mat_L(r))
                                .scaled(denom.inverse());
            lr_factor = lr_factor *
                        (DenseMatrix::identity(d, F.one()) -
                         M.pow(static_cast<unsigned long>(N), F.one()));
        }
        acc = acc * lr_factor.pow(static_cast<unsigned long>(N), F.one());
    }
    return acc;
}

struct BlockInfo {
    BlockLabel beta;
    std::vector<ResidueSeq> sequences;  // nonzero e(i) with this label
    DenseMatrix idempotent;             // e(beta)
    std::size_t dimension;              // dim e(beta) H
};

/// Group the nonzero e(i) into blocks; asserts every e(beta) is a central
/// idempotent (a failure signals an engine bug).
inline std::vector<BlockInfo> compute_blocks(const RegularRep& rep) {
    std::map<BlockLabel, BlockInfo> by_label;
    for (const auto& seq : rep.nonzero_idempotent_sequences()) {
        BlockLabel beta = block_of(seq);
        auto it = by_label.find(beta);
        if (it == by_label.end()) {
            BlockInfo info;
            info.beta = beta;
            info.idempotent = DenseMatrix(rep.dim(), rep.dim(), rep.field_zero());
            it = by_label.emplace(beta, std::move(info)).first;
        }
        it->second.sequences.push_back(seq);
        it->second.idempotent += rep.idempotent_matrix(seq);
    }
    std::vector<BlockInfo> out;
    for (auto& [beta, info] : by_label) {
        const DenseMatrix& E = info.idempotent;
        if (E * E != E) throw std::logic_error("e(beta) not idempotent (engine bug)");
        for (int r = 1; r < rep.n(); ++r)
            if (E * rep.mat_T(r) != rep.mat_T(r) * E)
                throw std::logic_error("e(beta) not central (engine bug)");
        for (int k = 1; k <= rep.n(); ++k)
            if (E * rep.mat_L(k) != rep.mat_L(k) * E)
                throw std::logic_error("e(beta) not central (engine bug)");
        info.dimension = E.rank();
        out.push_back(std::move(info));
    }
    return out;
}

/// pi_{Lambda,Lambda'}: H_n^Lambda -> H_n^Lambda' for Lambda >= Lambda',
/// defined on generators and extended monomial-wise.
class BetweenMap {
public:
    BetweenMap(RegularRepPtr source, RegularRepPtr target)
        : src_(std::move(source)), dst_(std::move(target)) {
        if (!src_->weight().contains(dst_->weight()))
            throw std::invalid_argument("pi_between: target weight not a sub-multiset");
        if (src_->n() != dst_->n() || !(src_->spec() == dst_->spec()))
            throw std::invalid_argument("pi_between: incompatible algebras");
    }

    CycElement apply(const CycElement& x) const {
        std::vector<FieldElement> acc(dst_->dim(), dst_->field_zero());
        for (std::size_t b = 0; b < x.coords().size(); ++b) {
            if (x.coords()[b].is_zero()) continue;
            auto v = dst_->apply_monomial(src_->basis()[b], dst_->unit_vector());
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i] * x.coords()[b];
        }
        return dst_->element(std::move(acc));
    }

    /// Transport of a left-multiplication operator (for matrix-level checks).
    DenseMatrix apply_matrix(const DenseMatrix& src_op) const {
        // image of the element src_op * 1, then its left-mult matrix downstairs
        CycElement elt = src_->element(src_op.apply(src_->unit_vector()));
        return dst_->left_mult_matrix(apply(elt));
    }

private:
    RegularRepPtr src_;
    RegularRepPtr dst_;
};

}  // namespace heckelab
