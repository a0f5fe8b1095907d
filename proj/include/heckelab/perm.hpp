#pragma once

// Permutations of {1..n} in one-line notation (stored 0-based), with Coxeter
// length, descents and reduced words.  Generator indices are 1-based
// throughout the public API: s_r swaps r and r+1, 1 <= r < n.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace heckelab {

class Perm {
public:
    Perm() = default;
    explicit Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
    explicit Perm(std::vector<int> img) : img_(std::move(img)) {}

    static Perm identity(int n) { return Perm(n); }

    /// Adjacent transposition s_r (1-based r, swaps letters r, r+1).
    static Perm transposition(int n, int r) {
        Perm w(n);
        std::swap(w.img_[r - 1], w.img_[r]);
        return w;
    }

    int n() const { return static_cast<int>(img_.size()); }

    /// Image w(k) for 1-based k, result 1-based.
    int operator()(int k) const { return img_[k - 1] + 1; }

    bool is_identity() const {
        for (int k = 0; k < n(); ++k)
            if (img_[k] != k) return false;
        return true;
    }

    /// Composition (this o other): (w*v)(k) = w(v(k)).
    Perm operator*(const Perm& v) const {
        assert(n() == v.n());
        std::vector<int> r(img_.size());
        for (std::size_t k = 0; k < img_.size(); ++k) r[k] = img_[v.img_[k]];
        return Perm(std::move(r));
    }

    Perm inverse() const {
        std::vector<int> r(img_.size());
        for (std::size_t k = 0; k < img_.size(); ++k) r[img_[k]] = static_cast<int>(k);
        return Perm(std::move(r));
    }

    /// Coxeter length = inversion count.
    int length() const {
        int c = 0;
        for (std::size_t a = 0; a < img_.size(); ++a)
            for (std::size_t b = a + 1; b < img_.size(); ++b)
                if (img_[a] > img_[b]) ++c;
        return c;
    }

    /// True iff l(s_r * w) < l(w), i.e. r occurs as first letter of a reduced word.
    bool has_left_descent(int r) const {
        // s_r * w shorter iff w^{-1}(r) > w^{-1}(r+1)
        int pr = -1, pr1 = -1;
        for (std::size_t k = 0; k < img_.size(); ++k) {
            if (img_[k] == r - 1) pr = static_cast<int>(k);
            if (img_[k] == r) pr1 = static_cast<int>(k);
        }
        return pr > pr1;
    }

    bool has_right_descent(int r) const { return img_[r - 1] > img_[r]; }

    /// Lexicographically smallest reduced word (1-based generator indices),
    /// via the greedy smallest-left-descent descent.
    std::vector<int> reduced_word() const {
        std::vector<int> word;
        Perm w = *this;
        while (!w.is_identity()) {
            int r = 1;
            while (!w.has_left_descent(r)) ++r;
            word.push_back(r);
            w = transposition(w.n(), r) * w;
        }
        return word;
    }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    const std::vector<int>& one_line() const { return img_; }

    /// All permutations of S_n in lexicographic one-line order.
    static std::vector<Perm> all(int n) {
        std::vector<int> base(n);
        std::iota(base.begin(), base.end(), 0);
        std::vector<Perm> out;
        do {
            out.push_back(Perm(base));
        } while (std::next_permutation(base.begin(), base.end()));
        return out;
    }

private:
    std::vector<int> img_;
};

}  // namespace heckelab
