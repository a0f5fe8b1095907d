#pragma once

// Generalized Ore localization over a ring oracle with idempotent-indexed
// multiplicative sets: fractions (a, s) with a in e_j A e_i, s in S_i,
// equivalence (a,s) ~ (b,t) iff at = bs, addition [(a,s)]+[(b,t)] =
// [(at+bs, st)], multiplication [(a,s)][(b,t)] = [(ac, tu)] where bu = sc
// (zero across mismatched components), sampled (O1)/(O2) checkers and the
// universal-property map sigma([(a,s)]) = psi(a) psi(s)^{-1}.
//
// The oracle is a template parameter; three instantiations live below: exact
// integers with powers of a fixed element (the classical commutative case),
// Z/6 with a zero-divisor denominator set (the (O1)-violating negative
// control), and the Hecke instance over modified-algebra expressions with
// probe-panel equality and the seven-case commuting solver.

#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckelab/modexpr.hpp"

namespace heckelab {

/// Oracle concept: value type, ring operations, decidable equality, the
/// idempotent list (components), and the (O2) solvers.
///   struct Oracle {
///     using Elem = ...;
///     int components() const;
///     Elem idem(int i) const;
///     Elem add(a, b), mul(a, b), neg(a) const;
///     bool eq(a, b) const;
///     // right solver: given a in e_j A e_i (components j, i) and s in S_i,
///     // produce (b, u) with u in S_j and u a = b s
///     std::pair<Elem, Elem> solve_right(j, i, a, s) const;
///   };

template <class Oracle>
class OreLocalization {
public:
    using Elem = typename Oracle::Elem;

    struct Fraction {
        int j, i;  // a in e_j A e_i
        Elem num;
        Elem den;  // in S_i
    };

    explicit OreLocalization(Oracle oracle) : o_(std::move(oracle)) {}
    const Oracle& oracle() const { return o_; }

    Fraction fraction(int j, int i, Elem num, Elem den) const {
        return Fraction{j, i, std::move(num), std::move(den)};
    }

    /// (a,s) ~ (b,t) iff a t = b s; fractions in different components are
    /// equal only when both vanish.
    bool eq(const Fraction& x, const Fraction& y) const {
        if (x.i == y.i && x.j == y.j)
            return o_.eq(o_.mul(x.num, y.den), o_.mul(y.num, x.den));
        return is_zero(x) && is_zero(y);
    }

    bool is_zero(const Fraction& x) const {
        return o_.eq(x.num, o_.mul(x.num, o_.zero_scalar()));
    }

    /// [(a,s)] + [(b,t)] = [(at+bs, st)]; same component required.
    Fraction add(const Fraction& x, const Fraction& y) const {
        if (x.i != y.i || x.j != y.j)
            throw std::invalid_argument("fraction_add: cross-component sum is formal");
        return Fraction{x.j, x.i,
                        o_.add(o_.mul(x.num, y.den), o_.mul(y.num, x.den)),
                        o_.mul(x.den, y.den)};
    }

    /// [(a,s)][(b,t)] = [(ac, tu)] with b u = s c, u in S_t-component; zero
    /// across mismatched middle components.
    std::optional<Fraction> mul(const Fraction& x, const Fraction& y) const {
        if (x.i != y.j) return std::nullopt;  // the paper's "0 if i != k"
        // need (c, u) with y.num * u = x.den * c, u in S_{y.i}
        auto [c, u] = o_.solve_left(x.i, y.i, y.num, x.den);
        return Fraction{x.j, y.i, o_.mul(x.num, c), o_.mul(y.den, u)};
    }

    struct SampleReport {
        std::size_t checked = 0;
        std::size_t failures = 0;
        std::string first_failure;
    };

    /// (O1) on samples: s e_i g = 0 implies e_i g = 0.
    SampleReport verify_O1(const std::vector<std::tuple<int, Elem, Elem>>& samples) const {
        SampleReport rep;
        for (const auto& [i, s, g] : samples) {
            ++rep.checked;
            Elem eg = o_.mul(o_.idem(i), g);
            if (o_.eq(o_.mul(s, eg), o_.mul(eg, o_.zero_scalar())) &&
                !o_.eq(eg, o_.mul(eg, o_.zero_scalar()))) {
                ++rep.failures;
                if (rep.first_failure.empty()) rep.first_failure = "O1 fails on sample";
            }
        }
        return rep;
    }

    /// (O2) on samples: solver output verifies u a = b s.
    SampleReport verify_O2(
        const std::vector<std::tuple<int, int, Elem, Elem>>& samples) const {
        SampleReport rep;
        for (const auto& [j, i, a, s] : samples) {
            ++rep.checked;
            auto [b, u] = o_.solve_right(j, i, a, s);
            if (!o_.eq(o_.mul(u, a), o_.mul(b, s))) {
                ++rep.failures;
                if (rep.first_failure.empty())
                    rep.first_failure = "solver identity ua = bs fails";
            }
        }
        return rep;
    }

    /// sigma([(a,s)]) = psi(a) * psi(s)^{-1}, given psi and a corner
    /// inversion witness for psi(s).
    template <class Image>
    Image universal_map(const Fraction& x, const std::function<Image(const Elem&)>& psi,
                        const std::function<Image(const Image&, int)>& invert_in_block)
        const {
        Image ps = psi(x.den);
        Image inv = invert_in_block(ps, x.i);
        return psi(x.num) * inv;
    }

private:
    Oracle o_;
};

// ---------------------------------------------------------------------------
// commutative demo: integers localized at the powers of a fixed element
// ---------------------------------------------------------------------------

struct IntegerOracle {
    using Elem = mpz_class;
    int components() const { return 1; }
    Elem idem(int) const { return 1; }
    Elem zero_scalar() const { return 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    // commutative: u = s works on either side
    std::pair<Elem, Elem> solve_right(int, int, const Elem& a, const Elem& s) const {
        return {a, s};
    }
    std::pair<Elem, Elem> solve_left(int, int, const Elem& a, const Elem& s) const {
        return {a, s};
    }
};

// ---------------------------------------------------------------------------
// negative control: Z/6 with the zero-divisor multiplicative set {1, 2, 4}
// violates (O1); equivalence transitivity is expected to fail
// ---------------------------------------------------------------------------

struct ZmodSixOracle {
    using Elem = long;
    int components() const { return 1; }
    Elem idem(int) const { return 1; }
    Elem zero_scalar() const { return 0; }
    Elem add(Elem a, Elem b) const { return (a + b) % 6; }
    Elem mul(Elem a, Elem b) const { return (a * b) % 6; }
    Elem neg(Elem a) const { return ((-a) % 6 + 6) % 6; }
    bool eq(Elem a, Elem b) const { return ((a - b) % 6 + 6) % 6 == 0; }
    std::pair<Elem, Elem> solve_right(int, int, Elem a, Elem s) const { return {a, s}; }
    std::pair<Elem, Elem> solve_left(int, int, Elem a, Elem s) const { return {a, s}; }
};

/// The expected transitivity failure: (3,1) ~ (0,2) and (0,2) ~ (0,1) but
/// (3,1) !~ (0,1) in Z/6 with S = {1,2,4}.
inline bool zmod6_transitivity_fails() {
    OreLocalization<ZmodSixOracle> loc{ZmodSixOracle{}};
    auto x = loc.fraction(0, 0, 3, 1);
    auto y = loc.fraction(0, 0, 0, 2);
    auto z = loc.fraction(0, 0, 0, 1);
    return loc.eq(x, y) && loc.eq(y, z) && !loc.eq(x, z);
}

// ---------------------------------------------------------------------------
// Hecke instance: expressions of the modified algebra, probe-panel equality,
// the multiplicative sets Sigma(i) generated by difference atoms, and the
// commuting solver of the seven-case lemma
// ---------------------------------------------------------------------------

/// An element of the Hecke oracle: an expression together with its routing
/// components (j <- i) and, for denominators, the list of difference factors.
struct HeckeOreElem {
    ModExprPtr expr;
    // denominators: product of (X_r - q^b X_s) e(i) factors, kept as data so
    // the solver can push them through generators one factor at a time
    struct DiffFactor {
        int r, s;
        long b;
    };
    std::vector<DiffFactor> factors;  // meaningful for multiplicative-set members
    ResidueSeq route_left, route_right;
};

class HeckeOracle {
public:
    using Elem = HeckeOreElem;

    HeckeOracle(FieldSpec spec, int n, BlockLabel beta, std::size_t dim_budget = 200)
        : spec_(std::move(spec)), n_(n), beta_(std::move(beta)), budget_(dim_budget) {
        seqs_ = sequences_of_block(beta_);
    }

    const FieldSpec& spec() const { return spec_; }
    int n() const { return n_; }
    const BlockLabel& beta() const { return beta_; }
    int components() const { return static_cast<int>(seqs_.size()); }
    const ResidueSeq& seq_of(int i) const { return seqs_.at(i); }
    int index_of(const ResidueSeq& s) const {
        for (std::size_t k = 0; k < seqs_.size(); ++k)
            if (seqs_[k] == s) return static_cast<int>(k);
        throw std::invalid_argument("sequence outside the block");
    }

    Elem idem(int i) const {
        Elem e;
        e.expr = ModExpr::idem(seqs_[i]);
        e.route_left = e.route_right = seqs_[i];
        return e;
    }
    Elem zero_scalar() const {
        Elem e;
        e.expr = ModExpr::scalar(spec_.zero(), ModExpr::idem(seqs_[0]));
        e.route_left = e.route_right = seqs_[0];
        return e;
    }

    /// e(j') T_r e(i') as an oracle element (routing tracked).
    Elem gen_elem(int r, const ResidueSeq& i) const {
        ResidueSeq si = i;
        std::swap(si[r - 1], si[r]);
        Elem e;
        e.expr = ModExpr::prod({ModExpr::idem(si), ModExpr::gen(r, i)});
        e.route_left = si;
        e.route_right = i;
        return e;
    }
    Elem gen_diag_elem(int r, const ResidueSeq& i) const {
        Elem e;
        e.expr = ModExpr::prod({ModExpr::idem(i), ModExpr::gen(r, i)});
        e.route_left = i;
        e.route_right = i;
        return e;
    }
    Elem xmono_elem(const std::vector<int>& a, const ResidueSeq& i) const {
        Elem e;
        e.expr = ModExpr::xmono(a, i);
        e.route_left = e.route_right = i;
        return e;
    }
    /// A multiplicative-set member: product of difference factors at e(i).
    Elem sigma_elem(const std::vector<HeckeOreElem::DiffFactor>& factors,
                    const ResidueSeq& i) const {
        Elem e;
        std::vector<ModExprPtr> parts;
        for (const auto& f : factors) {
            if (residue_reduce(i[f.r - 1] - f.b - i[f.s - 1], spec_.quantum_char()) == 0)
                throw std::invalid_argument("sigma factor violates side-condition");
            parts.push_back(diff_expr(f, i));
        }
        parts.push_back(ModExpr::idem(i));
        e.expr = ModExpr::prod(std::move(parts));
        e.factors = factors;
        e.route_left = e.route_right = i;
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem e;
        e.expr = a.expr + b.expr;
        e.route_left = a.route_left;
        e.route_right = a.route_right;
        return e;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem e;
        e.expr = a.expr * b.expr;
        e.route_left = a.route_left;
        e.route_right = b.route_right;
        e.factors.clear();
        if (!a.factors.empty() && !b.factors.empty() && a.route_right == b.route_left) {
            e.factors = a.factors;
            e.factors.insert(e.factors.end(), b.factors.begin(), b.factors.end());
        }
        return e;
    }
    Elem neg(const Elem& a) const {
        Elem e = a;
        e.expr = ModExpr::scalar(-spec_.one(), a.expr);
        return e;
    }
    bool eq(const Elem& a, const Elem& b) const {
        ModEqualityContext ctx{spec_, n_, beta_, budget_};
        return mod_equal(ctx, a.expr, b.expr).equal;
    }

    /// Push every difference factor of s from the right of a to the left:
    /// returns (b, u) with u a = b s, u in Sigma(route_left(a)).  a must be a
    /// generator atom (T-routed or diagonal) or an X-monomial; the seven-case
    /// analysis reduces to: X-polynomial atoms commute; off-diagonal T-atoms
    /// conjugate factor indices by s_t (with a sign when the factor pair is
    /// {t, t+1}); diagonal T-atoms absorb the symmetrized second factor.
    std::pair<Elem, Elem> solve_right(int /*j*/, int /*i*/, const Elem& a,
                                      const Elem& s) const {
        Elem b = a;
        std::vector<HeckeOreElem::DiffFactor> ufac;
        for (const auto& f : s.factors) {
            auto moved = push_factor_left(b, f);
            b = moved.first;
            for (const auto& nf : moved.second) ufac.push_back(nf);
        }
        Elem u = sigma_elem(ufac, a.route_left);
        return {b, u};
    }

    /// Mirror orientation: (c, v) with a v = s c, v in Sigma(route_right(a)),
    /// obtained from solve_right through the * anti-involution (difference
    /// factors are *-fixed).
    std::pair<Elem, Elem> solve_left(int /*i*/, int /*l*/, const Elem& a,
                                     const Elem& s) const {
        Elem astar = star(a);
        auto [bstar, u] = solve_right(0, 0, astar, s);
        return {star(bstar), u};
    }

private:
    FieldSpec spec_;
    int n_;
    BlockLabel beta_;
    std::size_t budget_;
    std::vector<ResidueSeq> seqs_;

    ModExprPtr diff_expr(const HeckeOreElem::DiffFactor& f, const ResidueSeq& i) const {
        // (X_r - q^b X_s) e(i) resp. (x_r - x_s - b) e(i)
        auto xr = ModExpr::xvar(f.r, 1, i);
        auto xs = ModExpr::xvar(f.s, 1, i);
        if (spec_.degenerate()) {
            long bb = residue_reduce(f.b, spec_.quantum_char());
            return ModExpr::sum({xr, ModExpr::scalar(-spec_.one(), xs),
                                 ModExpr::scalar(-spec_.integer(bb), ModExpr::idem(i))});
        }
        return ModExpr::sum({xr, ModExpr::scalar(-spec_.q_pow(f.b), xs)});
    }

    Elem star(const Elem& a) const {
        Elem e;
        e.expr = star_expr(a.expr);
        e.route_left = a.route_right;
        e.route_right = a.route_left;
        e.factors = a.factors;
        return e;
    }

    ModExprPtr star_expr(const ModExprPtr& x) const {
        switch (x->kind) {
            case ModExpr::Kind::Idem:
            case ModExpr::Kind::XMono:
            case ModExpr::Kind::InvAtom:
                return x;  // *-fixed atoms (X's and differences commute with e(i))
            case ModExpr::Kind::Gen: {
                // (T_r e(i))* = e(i) T_r = T_r e(s_r ... ) routed from the left:
                // as a product, reverse to e(i) on the left of T_r
                ResidueSeq i = x->seq;
                ResidueSeq si = i;
                std::swap(si[x->r - 1], si[x->r]);
                return ModExpr::prod({ModExpr::idem(i), ModExpr::gen(x->r, si)});
            }
            case ModExpr::Kind::Scalar:
                return ModExpr::scalar(x->coeff, star_expr(x->children[0]));
            case ModExpr::Kind::Sum: {
                std::vector<ModExprPtr> parts;
                for (const auto& c : x->children) parts.push_back(star_expr(c));
                return ModExpr::sum(std::move(parts));
            }
            case ModExpr::Kind::Prod: {
                std::vector<ModExprPtr> parts;
                for (auto it = x->children.rbegin(); it != x->children.rend(); ++it)
                    parts.push_back(star_expr(*it));
                return ModExpr::prod(std::move(parts));
            }
        }
        throw std::logic_error("unreachable");
    }

    /// Move one difference factor (over the right routing of a) to the left
    /// of the atom a; returns the new atom (possibly with sign / an extra
    /// right factor absorbed) and the produced left factors.
    std::pair<Elem, std::vector<HeckeOreElem::DiffFactor>> push_factor_left(
        const Elem& a, const HeckeOreElem::DiffFactor& f) const {
        std::vector<HeckeOreElem::DiffFactor> produced;
        // X-monomial or idem atom: plain commute
        if (a.route_left == a.route_right && a.factors.empty() &&
            (a.expr->kind == ModExpr::Kind::XMono || a.expr->kind == ModExpr::Kind::Idem ||
             is_x_polynomial(a.expr))) {
            produced.push_back(f);
            return {a, produced};
        }
        // locate the generator structure: off-diagonal or diagonal T-atom
        int t = find_gen_index(a.expr);
        if (t == 0) throw std::invalid_argument("solver: atom outside the seven cases");
        const ResidueSeq& i = a.route_right;
        ResidueSeq si = i;
        std::swap(si[t - 1], si[t]);
        auto st = [&](int k) { return k == t ? t + 1 : (k == t + 1 ? t : k); };
        if (a.route_left == si && !(si == i)) {
            // off-diagonal: a F = s_t(F) e(route_left) a exactly, the usual
            // correction being killed by the cross-idempotent; the moved
            // factor keeps its exponent with conjugated indices (left
            // unnormalized, a unit multiple of the canonical set member)
            produced.push_back({st(f.r), st(f.s), f.b});
            return {a, produced};
        }
        if (a.route_left == i) {
            // diagonal T-atom (i_t = i_{t+1}): F alone does not commute, but
            // the symmetrized pair G = F s_t(F) does; absorb the twin on the
            // right and emit the pair on the left
            HeckeOreElem::DiffFactor twin{st(f.r), st(f.s), f.b};
            Elem b = a;
            b.expr = ModExpr::prod({a.expr, diff_expr(twin, i), ModExpr::idem(i)});
            produced.push_back(f);
            produced.push_back(twin);
            return {b, produced};
        }
        throw std::invalid_argument("solver: atom outside the seven cases");
    }

    bool is_x_polynomial(const ModExprPtr& x) const {
        switch (x->kind) {
            case ModExpr::Kind::Idem:
            case ModExpr::Kind::XMono:
                return true;
            case ModExpr::Kind::Gen:
            case ModExpr::Kind::InvAtom:
                return false;
            case ModExpr::Kind::Scalar:
                return is_x_polynomial(x->children[0]);
            case ModExpr::Kind::Sum:
            case ModExpr::Kind::Prod: {
                for (const auto& c : x->children)
                    if (!is_x_polynomial(c)) return false;
                return true;
            }
        }
        return false;
    }

    int find_gen_index(const ModExprPtr& x) const {
        switch (x->kind) {
            case ModExpr::Kind::Gen:
                return x->r;
            case ModExpr::Kind::Scalar:
                return find_gen_index(x->children[0]);
            case ModExpr::Kind::Prod: {
                for (const auto& c : x->children) {
                    int t = find_gen_index(c);
                    if (t) return t;
                }
                return 0;
            }
            default:
                return 0;
        }
    }
};

}  // namespace heckelab
