#pragma once

// Exact ground fields for the Hecke algebra engine: rationals, prime fields
// F_p with runtime modulus, and cyclotomic extensions Q[x]/Phi_e(x).  A
// FieldSpec carries the Hecke configuration (degenerate / non-degenerate,
// quantum characteristic e, parameter q) and mints constants; FieldElement is
// a self-describing exact scalar.  All values are immutable after
// construction and all operations are pure.

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace heckelab {

enum class HeckeMode { Degenerate, Nondegenerate };

/// Reduce an integer to its residue in [0,e) for e > 0; identity for e = 0.
inline long residue_reduce(long v, unsigned e) {
    if (e == 0) return v;
    long m = v % static_cast<long>(e);
    return m < 0 ? m + static_cast<long>(e) : m;
}

namespace detail {

// Dense univariate polynomials over Q with no trailing zeros, enough for the
// cyclotomic tower (Phi_e construction, reduction, extended gcd).
using QPoly = std::vector<mpq_class>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qp_trim(r);
    return r;
}

inline QPoly qp_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qp_trim(a);
    return a;
}

// Division with remainder; divisor must be nonzero.
inline std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
    if (b.empty()) throw std::logic_error("qp_divmod: division by zero poly");
    QPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, mpq_class(0));
    while (a.size() >= b.size()) {
        mpq_class c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] += c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        qp_trim(a);  // leading term cancels, so a strictly shrinks
    }
    qp_trim(q);
    return {q, a};
}

// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
inline std::tuple<QPoly, QPoly, QPoly> qp_ext_gcd(QPoly a, QPoly b) {
    QPoly u0{mpq_class(1)}, v0, u1, v1{mpq_class(1)};
    while (!b.empty()) {
        auto [q, r] = qp_divmod(a, b);
        QPoly u2 = qp_sub(u0, qp_mul(q, u1));
        QPoly v2 = qp_sub(v0, qp_mul(q, v1));
        a = b; b = r;
        u0 = u1; v0 = v1;
        u1 = u2; v1 = v2;
    }
    if (!a.empty()) {
        mpq_class lc = a.back();
        for (auto& c : a) c /= lc;
        for (auto& c : u0) c /= lc;
        for (auto& c : v0) c /= lc;
    }
    return {a, u0, v0};
}

/// e-th cyclotomic polynomial, cached. Phi_e = (x^e - 1) / prod_{d|e, d<e} Phi_d.
inline const QPoly& cyclotomic_poly(unsigned e) {
    static std::map<unsigned, QPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    if (e == 0) throw std::logic_error("cyclotomic_poly: e must be positive");
    QPoly num(e + 1, mpq_class(0));
    num[0] = -1;
    num[e] = 1;
    for (unsigned d = 1; d < e; ++d) {
        if (e % d != 0) continue;
        // recursive fill without re-locking
        if (!cache.count(d)) {
            QPoly nd(d + 1, mpq_class(0));
            nd[0] = -1;
            nd[d] = 1;
            for (unsigned d2 = 1; d2 < d; ++d2)
                if (d % d2 == 0) nd = qp_divmod(nd, cache.at(d2)).first;
            cache[d] = nd;
        }
        num = qp_divmod(num, cache.at(d)).first;
    }
    return cache[e] = num;
}

inline unsigned long mod_pow(unsigned long b, unsigned long ex, unsigned long p) {
    unsigned long r = 1 % p;
    b %= p;
    while (ex) {
        if (ex & 1) r = (__uint128_t)r * b % p;
        b = (__uint128_t)b * b % p;
        ex >>= 1;
    }
    return r;
}

inline unsigned long mod_inv(unsigned long a, unsigned long p) {
    if (a % p == 0) throw std::domain_error("mod_inv: zero in F_p");
    return mod_pow(a, p - 2, p);  // p prime
}

}  // namespace detail

/// One exact scalar. The representation kind (rational / F_p / cyclotomic)
/// is fixed per field; mixing kinds or parameters is a logic error.
class FieldElement {
public:
    struct Fp {
        unsigned long v;
        unsigned long p;
        bool operator==(const Fp& o) const { return v == o.v && p == o.p; }
    };
    struct Cyc {
        std::vector<mpq_class> c;  // length = deg Phi_e, reduced mod Phi_e
        unsigned e;
        bool operator==(const Cyc& o) const { return e == o.e && c == o.c; }
    };

    FieldElement() : rep_(mpq_class(0)) {}
    explicit FieldElement(mpq_class q) : rep_(std::move(q)) {}
    FieldElement(unsigned long v, unsigned long p) : rep_(Fp{v % p, p}) {}
    FieldElement(std::vector<mpq_class> c, unsigned e) : rep_(Cyc{std::move(c), e}) {}

    static FieldElement zero_like(const FieldElement& x) { return int_like(x, 0); }
    static FieldElement one_like(const FieldElement& x) { return int_like(x, 1); }

    static FieldElement int_like(const FieldElement& x, long v) {
        if (auto* r = std::get_if<mpq_class>(&x.rep_)) {
            (void)r;
            return FieldElement(mpq_class(v));
        }
        if (auto* f = std::get_if<Fp>(&x.rep_)) {
            long m = v % static_cast<long>(f->p);
            if (m < 0) m += static_cast<long>(f->p);
            return FieldElement(static_cast<unsigned long>(m), f->p);
        }
        const Cyc& c = std::get<Cyc>(x.rep_);
        std::vector<mpq_class> cc(c.c.size(), mpq_class(0));
        if (!cc.empty()) cc[0] = v;
        return FieldElement(std::move(cc), c.e);
    }

    bool is_zero() const {
        if (auto* r = std::get_if<mpq_class>(&rep_)) return *r == 0;
        if (auto* f = std::get_if<Fp>(&rep_)) return f->v == 0;
        for (const auto& q : std::get<Cyc>(rep_).c)
            if (q != 0) return false;
        return true;
    }
    bool is_one() const { return *this == one_like(*this); }

    bool operator==(const FieldElement& o) const { return rep_ == o.rep_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator-() const {
        FieldElement r = *this;
        if (auto* q = std::get_if<mpq_class>(&r.rep_)) {
            *q = -*q;
        } else if (auto* f = std::get_if<Fp>(&r.rep_)) {
            f->v = f->v == 0 ? 0 : f->p - f->v;
        } else {
            for (auto& c : std::get<Cyc>(r.rep_).c) c = -c;
        }
        return r;
    }

    FieldElement& operator+=(const FieldElement& o) {
        match(o);
        if (auto* q = std::get_if<mpq_class>(&rep_)) {
            *q += std::get<mpq_class>(o.rep_);
        } else if (auto* f = std::get_if<Fp>(&rep_)) {
            f->v = (f->v + std::get<Fp>(o.rep_).v) % f->p;
        } else {
            auto& a = std::get<Cyc>(rep_);
            const auto& b = std::get<Cyc>(o.rep_);
            for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
        }
        return *this;
    }
    FieldElement& operator-=(const FieldElement& o) { return *this += -o; }

    FieldElement& operator*=(const FieldElement& o) {
        match(o);
        if (auto* q = std::get_if<mpq_class>(&rep_)) {
            *q *= std::get<mpq_class>(o.rep_);
        } else if (auto* f = std::get_if<Fp>(&rep_)) {
            f->v = (__uint128_t)f->v * std::get<Fp>(o.rep_).v % f->p;
        } else {
            auto& a = std::get<Cyc>(rep_);
            const auto& b = std::get<Cyc>(o.rep_);
            detail::QPoly pa(a.c.begin(), a.c.end()), pb(b.c.begin(), b.c.end());
            detail::qp_trim(pa);
            detail::qp_trim(pb);
            auto prod = detail::qp_mul(pa, pb);
            auto rem = detail::qp_divmod(prod, detail::cyclotomic_poly(a.e)).second;
            rem.resize(a.c.size(), mpq_class(0));
            a.c.assign(rem.begin(), rem.end());
        }
        return *this;
    }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a *= b.inverse(); }

    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("FieldElement::inverse of zero");
        if (auto* q = std::get_if<mpq_class>(&rep_)) return FieldElement(1 / *q);
        if (auto* f = std::get_if<Fp>(&rep_))
            return FieldElement(detail::mod_inv(f->v, f->p), f->p);
        const Cyc& a = std::get<Cyc>(rep_);
        detail::QPoly pa(a.c.begin(), a.c.end());
        detail::qp_trim(pa);
        auto [g, u, v] = detail::qp_ext_gcd(pa, detail::cyclotomic_poly(a.e));
        (void)v;
        if (g.size() != 1) throw std::domain_error("cyclotomic inverse: non-unit gcd");
        auto inv = detail::qp_divmod(u, detail::cyclotomic_poly(a.e)).second;
        inv.resize(a.c.size(), mpq_class(0));
        return FieldElement(std::vector<mpq_class>(inv.begin(), inv.end()), a.e);
    }

    FieldElement pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        FieldElement r = one_like(*this), b = *this;
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    /// Canonical string form: rational "p/q", residue "r mod p",
    /// cyclotomic "[c0,c1,...]" (coefficients of powers of q).
    std::string str() const {
        std::ostringstream os;
        if (auto* q = std::get_if<mpq_class>(&rep_)) {
            os << *q;
        } else if (auto* f = std::get_if<Fp>(&rep_)) {
            os << f->v << " mod " << f->p;
        } else {
            const Cyc& c = std::get<Cyc>(rep_);
            os << "[";
            for (std::size_t i = 0; i < c.c.size(); ++i) {
                if (i) os << ",";
                os << c.c[i];
            }
            os << "]";
        }
        return os.str();
    }

    bool is_rational_kind() const { return std::holds_alternative<mpq_class>(rep_); }
    const mpq_class& rational() const { return std::get<mpq_class>(rep_); }

private:
    std::variant<mpq_class, Fp, Cyc> rep_;

    void match(const FieldElement& o) const {
        if (rep_.index() != o.rep_.index())
            throw std::logic_error("FieldElement: mixed field kinds");
        if (auto* f = std::get_if<Fp>(&rep_)) {
            if (f->p != std::get<Fp>(o.rep_).p)
                throw std::logic_error("FieldElement: mixed moduli");
        } else if (auto* c = std::get_if<Cyc>(&rep_)) {
            if (c->e != std::get<Cyc>(o.rep_).e)
                throw std::logic_error("FieldElement: mixed cyclotomic orders");
        }
    }
};

/// Ground field configuration: mode, characteristic, quantum characteristic e
/// and the Hecke parameter q (non-degenerate only).
class FieldSpec {
public:
    /// Degenerate, char 0, e = 0 (ground field Q).
    static FieldSpec degenerate_rationals() {
        FieldSpec s;
        s.mode_ = HeckeMode::Degenerate;
        s.char_ = 0;
        s.e_ = 0;
        s.exemplar_ = FieldElement(mpq_class(1));
        return s;
    }

    /// Degenerate, e = p = char (ground field F_p).
    static FieldSpec degenerate_prime(unsigned p) {
        require_prime(p);
        FieldSpec s;
        s.mode_ = HeckeMode::Degenerate;
        s.char_ = p;
        s.e_ = p;
        s.exemplar_ = FieldElement(1ul, p);
        return s;
    }

    /// Non-degenerate over Q(zeta_e) with q = class of x mod Phi_e, e >= 2.
    static FieldSpec nondegenerate_cyclotomic(unsigned e) {
        if (e < 2) throw std::invalid_argument("cyclotomic spec needs e >= 2");
        FieldSpec s;
        s.mode_ = HeckeMode::Nondegenerate;
        s.char_ = 0;
        s.e_ = e;
        unsigned deg = static_cast<unsigned>(detail::cyclotomic_poly(e).size() - 1);
        std::vector<mpq_class> one(deg, mpq_class(0));
        one[0] = 1;
        s.exemplar_ = FieldElement(one, e);
        std::vector<mpq_class> x(deg, mpq_class(0));
        if (deg >= 2)
            x[1] = 1;
        else
            x[0] = -detail::cyclotomic_poly(e)[0];  // deg 1: q = -Phi_e(0)
        s.q_ = FieldElement(x, e);
        return s;
    }

    /// Non-degenerate over Q with rational q != 1 (e computed exactly:
    /// rationals admit no root of unity other than +-1).
    static FieldSpec nondegenerate_rational(const mpq_class& q) {
        if (q == 1) throw std::invalid_argument("non-degenerate q must differ from 1");
        FieldSpec s;
        s.mode_ = HeckeMode::Nondegenerate;
        s.char_ = 0;
        s.e_ = (q == -1) ? 2u : 0u;
        s.exemplar_ = FieldElement(mpq_class(1));
        s.q_ = FieldElement(q);
        return s;
    }

    /// Non-degenerate over F_p with q in F_p; e = multiplicative order of q.
    static FieldSpec nondegenerate_prime(unsigned p, unsigned long qv) {
        require_prime(p);
        qv %= p;
        if (qv == 1 || qv == 0) throw std::invalid_argument("need q notin {0,1} in F_p");
        FieldSpec s;
        s.mode_ = HeckeMode::Nondegenerate;
        s.char_ = p;
        s.exemplar_ = FieldElement(1ul, p);
        s.q_ = FieldElement(qv, p);
        unsigned long acc = qv;
        unsigned e = 1;
        while (acc != 1) {
            acc = (__uint128_t)acc * qv % p;
            ++e;
        }
        s.e_ = e;
        return s;
    }

    HeckeMode mode() const { return mode_; }
    bool degenerate() const { return mode_ == HeckeMode::Degenerate; }
    unsigned characteristic() const { return char_; }
    unsigned quantum_char() const { return e_; }

    FieldElement zero() const { return FieldElement::zero_like(exemplar_); }
    FieldElement one() const { return FieldElement::one_like(exemplar_); }
    FieldElement integer(long v) const { return FieldElement::int_like(exemplar_, v); }

    FieldElement q() const {
        if (degenerate()) throw std::logic_error("q undefined in degenerate mode");
        return q_;
    }

    /// q^k, with k reduced mod e when e > 0 (q^e = 1 in every realization here).
    FieldElement q_pow(long k) const {
        if (e_ > 0) k = residue_reduce(k, e_);
        return q().pow(k);
    }

    /// q_i of the paper: q^i if q != 1 (non-degenerate), i*1_K if q = 1.
    FieldElement q_residue(long i) const {
        if (degenerate()) return integer(residue_reduce(i, e_));
        return q_pow(i);
    }

    /// [k]_q = 1 + q + ... + q^{k-1} (non-degenerate), k*1_K (degenerate).
    FieldElement quantum_integer(unsigned k) const {
        if (degenerate()) return integer(static_cast<long>(k));
        FieldElement acc = zero();
        for (unsigned j = 0; j < k; ++j) acc += q().pow(j);
        return acc;
    }

    /// Verify the FieldSpec invariants; throws std::logic_error on violation.
    /// For the rational non-degenerate case with e = 0 the check is exact:
    /// a rational q with |q| != 1 is never a root of unity.
    void validate() const {
        if (degenerate()) {
            if (!((e_ == 0 && char_ == 0) || (e_ == char_ && char_ > 0)))
                throw std::logic_error("degenerate spec needs e=0,char 0 or e=char=p");
            return;
        }
        if (q() == one()) throw std::logic_error("non-degenerate q must differ from 1");
        if (e_ > 0) {
            if (!quantum_integer(e_).is_zero())
                throw std::logic_error("quantum characteristic: [e]_q != 0");
            for (unsigned k = 1; k < e_; ++k)
                if (quantum_integer(k).is_zero())
                    throw std::logic_error("quantum characteristic not minimal");
        } else {
            if (q_.is_rational_kind()) {
                const mpq_class& v = q_.rational();
                if (v == 1 || v == -1)
                    throw std::logic_error("rational |q| = 1 has finite quantum order");
            } else {
                for (unsigned k = 1; k <= 64; ++k)
                    if (quantum_integer(k).is_zero())
                        throw std::logic_error("e=0 but [k]_q = 0 within bound");
            }
        }
    }

    std::string describe() const {
        std::ostringstream os;
        os << (degenerate() ? "degenerate" : "nondegenerate") << " char " << char_
           << " e " << e_;
        if (!degenerate()) os << " q " << q_.str();
        return os.str();
    }

    bool operator==(const FieldSpec& o) const {
        if (mode_ != o.mode_ || char_ != o.char_ || e_ != o.e_) return false;
        if (degenerate()) return true;
        return q_ == o.q_;
    }

private:
    FieldSpec() = default;

    static void require_prime(unsigned p) {
        if (p < 2) throw std::invalid_argument("modulus must be a prime");
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("modulus must be a prime");
    }

    HeckeMode mode_ = HeckeMode::Degenerate;
    unsigned char_ = 0;
    unsigned e_ = 0;
    FieldElement exemplar_;
    FieldElement q_;
};

}  // namespace heckelab
