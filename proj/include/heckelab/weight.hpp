#pragma once

// Dominant weights Lambda = Lambda_{kappa_1} + ... + Lambda_{kappa_l},
// residue sequences i in I^n, block labels beta in Q_n^+, and the
// combinatorial oracle enumerating residue sequences of standard tableaux of
// l-multipartitions.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heckelab/field.hpp"

namespace heckelab {

using ResidueSeq = std::vector<long>;
using BlockLabel = std::map<long, int>;  // residue -> multiplicity

class Weight {
public:
    Weight() : e_(0) {}
    Weight(std::vector<long> kappas, unsigned e) : e_(e) {
        for (long k : kappas) kappas_.push_back(residue_reduce(k, e));
        std::sort(kappas_.begin(), kappas_.end());  // multiset order canonical
    }

    unsigned e() const { return e_; }
    int level() const { return static_cast<int>(kappas_.size()); }
    const std::vector<long>& kappas() const { return kappas_; }

    int multiplicity(long residue) const {
        residue = residue_reduce(residue, e_);
        return static_cast<int>(std::count(kappas_.begin(), kappas_.end(), residue));
    }

    /// Multiset containment: *this >= other componentwise.
    bool contains(const Weight& other) const {
        if (e_ != other.e_) return false;
        std::map<long, int> m;
        for (long k : kappas_) ++m[k];
        for (long k : other.kappas_)
            if (--m[k] < 0) return false;
        return true;
    }

    bool operator==(const Weight& o) const { return e_ == o.e_ && kappas_ == o.kappas_; }
    bool operator<(const Weight& o) const {
        if (e_ != o.e_) return e_ < o.e_;
        return kappas_ < o.kappas_;
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < kappas_.size(); ++i)
            os << (i ? "+" : "") << "L" << kappas_[i];
        if (kappas_.empty()) os << "0";
        return os.str();
    }

private:
    std::vector<long> kappas_;
    unsigned e_;
};

inline BlockLabel block_of(const ResidueSeq& seq) {
    BlockLabel b;
    for (long r : seq) ++b[r];
    return b;
}

inline std::string block_str(const BlockLabel& b) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [res, mult] : b) {
        if (!first) os << "+";
        first = false;
        if (mult != 1) os << mult << "*";
        os << "a" << res;
    }
    if (b.empty()) os << "0";
    return os.str();
}

inline std::string residue_str(const ResidueSeq& seq) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < seq.size(); ++k) os << (k ? "," : "") << seq[k];
    os << ")";
    return os.str();
}

namespace detail {

inline void grow_tableaux(const Weight& lam, int n, std::vector<std::vector<int>>& shape,
                          ResidueSeq& seq, std::set<ResidueSeq>& out) {
    if (static_cast<int>(seq.size()) == n) {
        out.insert(seq);
        return;
    }
    for (int l = 0; l < lam.level(); ++l) {
        auto& part = shape[l];
        for (std::size_t row = 0; row <= part.size(); ++row) {
            // addable node: first row always, otherwise strictly shorter than above
            int len = row < part.size() ? part[row] : 0;
            if (row > 0 && part[row - 1] <= len) continue;
            long res = residue_reduce(lam.kappas()[l] + len - static_cast<long>(row), lam.e());
            if (row == part.size())
                part.push_back(1);
            else
                ++part[row];
            seq.push_back(res);
            grow_tableaux(lam, n, shape, seq, out);
            seq.pop_back();
            if (row == part.size() - 1 && part[row] == 1)
                part.pop_back();
            else
                --part[row];
        }
    }
}

}  // namespace detail

/// Residue sequences (res_t(1),...,res_t(n)) over all standard tableaux of
/// all l-multipartitions of n, built by growing shapes one box at a time.
inline std::set<ResidueSeq> tableau_residue_sequences(int n, const Weight& lam) {
    std::set<ResidueSeq> out;
    std::vector<std::vector<int>> shape(lam.level());
    ResidueSeq seq;
    detail::grow_tableaux(lam, n, shape, seq, out);
    return out;
}

/// All i in I^beta for a block label (multiset permutations).
inline std::vector<ResidueSeq> sequences_of_block(const BlockLabel& beta) {
    ResidueSeq sorted;
    for (const auto& [res, mult] : beta)
        for (int k = 0; k < mult; ++k) sorted.push_back(res);
    std::vector<ResidueSeq> out;
    do {
        out.push_back(sorted);
    } while (std::next_permutation(sorted.begin(), sorted.end()));
    return out;
}

}  // namespace heckelab
