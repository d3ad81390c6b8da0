#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hardinian {

// King distance of cell (i, j) from the top-left corner, 0-based: max(i, j).
inline int king_distance(int i, int j) {
    return std::max(i, j);
}

// A candidate or valid Hardinian array: an n_rows x n_cols table of small
// non-negative integers together with the slack parameter r.
//
// Structural invariants (dimensions match, entries in [0, max(n,k)-1]) are
// enforced at construction; the three validity rules are a separate, weaker
// predicate (is_valid), so invalid candidates are representable.
// Values are immutable after construction and safe to share across threads.
class ArrayGrid {
public:
    ArrayGrid(int r, int n_rows, int n_cols, std::vector<int> entries)
        : r_(r), n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
        if (r_ < 0) throw std::invalid_argument("ArrayGrid: r must be non-negative");
        if (n_rows_ < 1 || n_cols_ < 1)
            throw std::invalid_argument("ArrayGrid: dimensions must be positive");
        if (entries_.size() != static_cast<std::size_t>(n_rows_) * n_cols_)
            throw std::invalid_argument("ArrayGrid: entry table does not match dimensions");
        const int bound = std::max(n_rows_, n_cols_) - 1;
        for (int v : entries_) {
            if (v < 0 || v > bound)
                throw std::invalid_argument("ArrayGrid: entry outside [0, max(n,k)-1]");
        }
    }

    int r() const { return r_; }
    int n_rows() const { return n_rows_; }
    int n_cols() const { return n_cols_; }

    int at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_cols_ + j]; }

    const std::vector<int>& entries() const { return entries_; }

    bool operator==(const ArrayGrid& o) const {
        return r_ == o.r_ && n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ &&
               entries_ == o.entries_;
    }

private:
    int r_;
    int n_rows_;
    int n_cols_;
    std::vector<int> entries_;
};

// The three rules for a Hardinian array, checked on 0-based indices:
//   (a) entry(0,0) = 0;
//   (b) entry(n-1,k-1) = max(n,k) - r - 1;
//   (c) each entry equals or is one more than each of its upper, left, and
//       upper-left neighbors;
//   (d) |entry(i,j) - king_distance(i,j)| <= r.
// Never throws on rule violations; malformed grids are rejected at
// construction instead.
inline bool is_valid(const ArrayGrid& g) {
    const int n = g.n_rows(), k = g.n_cols(), r = g.r();
    if (g.at(0, 0) != 0) return false;
    if (g.at(n - 1, k - 1) != std::max(n, k) - r - 1) return false;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) {
            const int v = g.at(i, j);
            if (std::abs(v - king_distance(i, j)) > r) return false;
            if (i > 0) {
                const int d = v - g.at(i - 1, j);
                if (d != 0 && d != 1) return false;
            }
            if (j > 0) {
                const int d = v - g.at(i, j - 1);
                if (d != 0 && d != 1) return false;
            }
            if (i > 0 && j > 0) {
                const int d = v - g.at(i - 1, j - 1);
                if (d != 0 && d != 1) return false;
            }
        }
    }
    return true;
}

inline ArrayGrid transpose(const ArrayGrid& g) {
    std::vector<int> t(g.entries().size());
    for (int i = 0; i < g.n_rows(); ++i)
        for (int j = 0; j < g.n_cols(); ++j)
            t[static_cast<std::size_t>(j) * g.n_rows() + i] = g.at(i, j);
    return ArrayGrid(g.r(), g.n_cols(), g.n_rows(), std::move(t));
}

// The 6x5, r=1 array used as the running example.
inline ArrayGrid example_array() {
    return ArrayGrid(1, 6, 5,
                     {0, 1, 2, 2, 3,
                      1, 1, 2, 2, 3,
                      2, 2, 2, 3, 3,
                      3, 3, 3, 3, 4,
                      4, 4, 4, 4, 4,
                      4, 4, 4, 4, 4});
}

// Space-separated integer rows, one line per row (golden-file format).
inline std::string to_text(const ArrayGrid& g) {
    std::ostringstream out;
    for (int i = 0; i < g.n_rows(); ++i) {
        for (int j = 0; j < g.n_cols(); ++j) {
            if (j) out << ' ';
            out << g.at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hardinian
