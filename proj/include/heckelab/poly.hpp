#pragma once

// Multivariate (Laurent) polynomials in t_1..t_n with exact field
// coefficients, the symmetric group action, and the divided difference
// (s_r(f) - f)/(t_{r+1} - t_r) computed by exact synthetic division.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckelab/field.hpp"
#include "heckelab/perm.hpp"

namespace heckelab {

class MultiPoly {
public:
    using Exp = std::vector<int>;

    MultiPoly() : nvars_(0), laurent_(false) {}
    MultiPoly(int nvars, bool laurent) : nvars_(nvars), laurent_(laurent) {}

    static MultiPoly monomial(int nvars, bool laurent, Exp e, FieldElement c) {
        MultiPoly p(nvars, laurent);
        p.add_term(std::move(e), std::move(c));
        return p;
    }

    /// t_k (1-based k).
    static MultiPoly variable(int nvars, bool laurent, int k, const FieldElement& one) {
        Exp e(nvars, 0);
        e[k - 1] = 1;
        return monomial(nvars, laurent, std::move(e), one);
    }

    static MultiPoly constant(int nvars, bool laurent, FieldElement c) {
        return monomial(nvars, laurent, Exp(nvars, 0), std::move(c));
    }

    int nvars() const { return nvars_; }
    bool laurent() const { return laurent_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exp, FieldElement>& terms() const { return terms_; }

    void add_term(Exp e, FieldElement c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::logic_error("MultiPoly: exponent arity mismatch");
        if (!laurent_)
            for (int x : e)
                if (x < 0) throw std::logic_error("MultiPoly: negative exponent in polynomial mode");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    MultiPoly operator-() const {
        MultiPoly r(nvars_, laurent_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a.nvars_, a.laurent_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e(ea);
                for (int k = 0; k < a.nvars_; ++k) e[k] += eb[k];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }

    MultiPoly scaled(const FieldElement& c) const {
        MultiPoly r(nvars_, laurent_);
        if (c.is_zero()) return r;
        for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
        return r;
    }

    /// Multiply by the monomial t^shift (entrywise exponent shift).
    MultiPoly shifted(const Exp& shift) const {
        MultiPoly r(nvars_, laurent_);
        for (const auto& [e, c] : terms_) {
            Exp e2(e);
            for (int k = 0; k < nvars_; ++k) e2[k] += shift[k];
            r.add_term(std::move(e2), c);
        }
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// sym_act: w(f), permuting t_k -> t_{w(k)}.
    MultiPoly permuted(const Perm& w) const {
        MultiPoly r(nvars_, laurent_);
        for (const auto& [e, c] : terms_) {
            Exp e2(nvars_, 0);
            for (int k = 1; k <= nvars_; ++k) e2[w(k) - 1] = e[k - 1];
            r.terms_.emplace(std::move(e2), c);
        }
        return r;
    }

    MultiPoly swapped(int r) const { return permuted(Perm::transposition(nvars_, r)); }

    /// (s_r(f) - f)/(t_{r+1} - t_r), exact.  The numerator is s_r-antisymmetric,
    /// so after clearing any negative t_r/t_{r+1} exponents with the symmetric
    /// monomial (t_r t_{r+1})^s the synthetic division in t_{r+1} has zero
    /// remainder; a nonzero remainder is an internal error.
    MultiPoly divided_difference(int r) const {
        MultiPoly g = swapped(r) - *this;
        if (g.is_zero()) return MultiPoly(nvars_, laurent_);
        int s = 0;
        for (const auto& [e, c] : g.terms_) {
            (void)c;
            s = std::max({s, -e[r - 1], -e[r]});
        }
        if (s > 0) {
            Exp shift(nvars_, 0);
            shift[r - 1] = s;
            shift[r] = s;
            g = g.shifted(shift);
        }
        // coefficients of powers of u = t_{r+1}; each coefficient is a
        // (Laurent) polynomial in the remaining variables including t_r
        std::map<int, MultiPoly> coef;
        int dmax = 0;
        for (const auto& [e, c] : g.terms_) {
            int du = e[r];
            dmax = std::max(dmax, du);
            Exp rest(e);
            rest[r] = 0;
            auto it = coef.find(du);
            if (it == coef.end()) it = coef.emplace(du, MultiPoly(nvars_, laurent_)).first;
            it->second.add_term(std::move(rest), c);
        }
        MultiPoly tr = variable(nvars_, laurent_, r, FieldElement::one_like(g.terms_.begin()->second));
        auto coef_at = [&](int k) {
            auto it = coef.find(k);
            return it == coef.end() ? MultiPoly(nvars_, laurent_) : it->second;
        };
        // Horner: h_{d-1} = c_d, h_{k-1} = c_k + t_r h_k, remainder c_0 + t_r h_0
        std::map<int, MultiPoly> h;
        MultiPoly carry = coef_at(dmax);
        for (int k = dmax - 1; k >= 0; --k) {
            h[k] = carry;
            carry = coef_at(k) + tr * carry;
        }
        if (!carry.is_zero())
            throw std::logic_error("divided_difference: nonzero remainder (engine bug)");
        MultiPoly result(nvars_, laurent_);
        for (const auto& [k, hk] : h)
            for (const auto& [e, c] : hk.terms_) {
                Exp e2(e);
                e2[r] += k;
                result.add_term(std::move(e2), c);
            }
        if (s > 0) {
            Exp unshift(nvars_, 0);
            unshift[r - 1] = -s;
            unshift[r] = -s;
            if (!laurent_) {
                // polynomial mode never needed a shift
                throw std::logic_error("divided_difference: shift in polynomial mode");
            }
            result = result.shifted(unshift);
        }
        return result;
    }

    std::string str(const std::string& var = "t") const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (int k = 0; k < nvars_; ++k)
                if (e[k] != 0)
                    out += "*" + var + std::to_string(k + 1) +
                           (e[k] == 1 ? "" : "^" + std::to_string(e[k]));
        }
        return out;
    }

private:
    int nvars_;
    bool laurent_;
    std::map<Exp, FieldElement> terms_;

    void check(const MultiPoly& o) const {
        if (nvars_ != o.nvars_ || laurent_ != o.laurent_)
            throw std::logic_error("MultiPoly: incompatible operands");
    }
};

}  // namespace heckelab
