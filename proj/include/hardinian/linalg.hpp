#pragma once

#include <gmpxx.h>

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hardinian {

// Rectangular matrix of exact integers, row-major. Immutable by convention
// once built (the builders below return by value).
class IntMatrix {
public:
    IntMatrix(int n_rows, int n_cols)
        : n_rows_(n_rows), n_cols_(n_cols),
          entries_(static_cast<std::size_t>(n_rows) * n_cols) {
        if (n_rows < 0 || n_cols < 0)
            throw std::invalid_argument("IntMatrix: negative dimension");
    }

    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        const int nr = static_cast<int>(rows.size());
        const int nc = nr ? static_cast<int>(rows[0].size()) : 0;
        IntMatrix m(nr, nc);
        for (int i = 0; i < nr; ++i) {
            if (static_cast<int>(rows[i].size()) != nc)
                throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
            for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    int n_rows() const { return n_rows_; }
    int n_cols() const { return n_cols_; }

    mpz_class& operator()(int i, int j) {
        return entries_[static_cast<std::size_t>(i) * n_cols_ + j];
    }
    const mpz_class& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * n_cols_ + j];
    }

    bool operator==(const IntMatrix& o) const {
        return n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ && entries_ == o.entries_;
    }

    // Plain-text row-per-line integer format for golden tests.
    std::string to_text() const {
        std::ostringstream out;
        for (int i = 0; i < n_rows_; ++i) {
            for (int j = 0; j < n_cols_; ++j) {
                if (j) out << ' ';
                out << (*this)(i, j).get_str();
            }
            out << '\n';
        }
        return out.str();
    }

private:
    int n_rows_;
    int n_cols_;
    std::vector<mpz_class> entries_;
};

namespace detail {

// Shared Pascal triangle, grown on demand. Rows live in a deque so existing
// rows never move; growth takes the unique lock, lookups the shared one.
class BinomialCache {
public:
    mpz_class get(long a, long b) {
        {
            std::shared_lock lock(mutex_);
            if (a < static_cast<long>(rows_.size())) return rows_[a][b];
        }
        std::unique_lock lock(mutex_);
        while (static_cast<long>(rows_.size()) <= a) {
            const auto& prev = rows_.back();
            std::vector<mpz_class> row(prev.size() + 1);
            row.front() = 1;
            row.back() = 1;
            for (std::size_t j = 1; j < prev.size(); ++j) row[j] = prev[j - 1] + prev[j];
            rows_.push_back(std::move(row));
        }
        return rows_[a][b];
    }

private:
    std::deque<std::vector<mpz_class>> rows_{{mpz_class(1)}};
    std::shared_mutex mutex_;
};

inline BinomialCache& binomial_cache() {
    static BinomialCache cache;
    return cache;
}

}  // namespace detail

// C(a, b); 0 when b < 0 or b > a. Negative a is rejected.
inline mpz_class binomial(long a, long b) {
    if (a < 0) throw std::invalid_argument("binomial: negative upper index");
    if (b < 0 || b > a) return 0;
    return detail::binomial_cache().get(a, b);
}

// The n x n binomial matrix with entry C(u+v, u), 0 <= u, v < n. Symmetric
// and unimodular.
inline IntMatrix build_M(int n) {
    if (n < 0) throw std::invalid_argument("build_M: n must be non-negative");
    IntMatrix m(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) m(u, v) = binomial(u + v, u);
    return m;
}

// Exact determinant by fraction-free (Bareiss) elimination. All intermediate
// divisions are exact over the integers; no floating point. The 0x0
// determinant is 1 by convention.
inline mpz_class det_bareiss(const IntMatrix& a) {
    if (a.n_rows() != a.n_cols())
        throw std::invalid_argument("det_bareiss: matrix is not square");
    const int n = a.n_rows();
    if (n == 0) return 1;

    std::vector<mpz_class> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = a(i, j);

    auto e = [&](int i, int j) -> mpz_class& { return m[static_cast<std::size_t>(i) * n + j]; };

    int sign = 1;
    mpz_class prev = 1, t;
    for (int k = 0; k + 1 < n; ++k) {
        if (e(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i) {
                if (e(i, k) != 0) { p = i; break; }
            }
            if (p < 0) return 0;
            for (int j = k; j < n; ++j) std::swap(e(k, j), e(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                t = e(i, j) * e(k, k) - e(i, k) * e(k, j);
                mpz_divexact(e(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            e(i, k) = 0;
        }
        prev = e(k, k);
    }
    return sign * e(n - 1, n - 1);
}

namespace detail {

inline void check_index_set(const std::vector<int>& ix, int limit, const char* what) {
    for (std::size_t t = 0; t < ix.size(); ++t) {
        if (ix[t] < 0 || ix[t] >= limit)
            throw std::invalid_argument(std::string(what) + ": index out of range");
        for (std::size_t u = t + 1; u < ix.size(); ++u)
            if (ix[t] == ix[u])
                throw std::invalid_argument(std::string(what) + ": duplicate index");
    }
}

}  // namespace detail

// Determinant of A with the listed rows and columns deleted.
inline mpz_class minor_det(const IntMatrix& a, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    if (rows.size() != cols.size())
        throw std::invalid_argument("minor_det: mismatched index set sizes");
    detail::check_index_set(rows, a.n_rows(), "minor_det");
    detail::check_index_set(cols, a.n_cols(), "minor_det");

    auto keep = [](int size, const std::vector<int>& drop) {
        std::vector<int> k;
        k.reserve(size - drop.size());
        for (int i = 0; i < size; ++i) {
            bool dropped = false;
            for (int d : drop) dropped = dropped || (d == i);
            if (!dropped) k.push_back(i);
        }
        return k;
    };
    const std::vector<int> kr = keep(a.n_rows(), rows), kc = keep(a.n_cols(), cols);
    IntMatrix sub(static_cast<int>(kr.size()), static_cast<int>(kc.size()));
    for (std::size_t i = 0; i < kr.size(); ++i)
        for (std::size_t j = 0; j < kc.size(); ++j) sub(static_cast<int>(i), static_cast<int>(j)) = a(kr[i], kc[j]);
    return det_bareiss(sub);
}

// The table of one-row-one-column minors of M(n):
// delta[i][j] = Delta(n)_i^j = det of M(n) with row i and column j deleted.
// Symmetric, and delta[i][n-1] = C(n-1, i).
struct MinorTable {
    int n = 0;
    std::vector<mpz_class> delta;  // n*n, row-major

    const mpz_class& at(int i, int j) const {
        return delta[static_cast<std::size_t>(i) * n + j];
    }
    mpz_class& at(int i, int j) { return delta[static_cast<std::size_t>(i) * n + j]; }
};

// Closed-sum construction: Delta(n)_i^j = sum_{l=0}^{n-1} C(l,i) C(l,j).
// This orientation is the one consistent with M(n)^{-1}; it is verified
// against direct Bareiss minors in the test suite.
inline MinorTable minor_table(int n) {
    if (n < 1) throw std::invalid_argument("minor_table: n must be >= 1");
    MinorTable t;
    t.n = n;
    t.delta.assign(static_cast<std::size_t>(n) * n, mpz_class(0));
    mpz_class acc;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            acc = 0;
            for (int l = j; l < n; ++l) {  // C(l,i) C(l,j) = 0 below l = max(i,j)
                mpz_class prod = binomial(l, i) * binomial(l, j);
                acc += prod;
            }
            t.at(i, j) = acc;
            t.at(j, i) = acc;
        }
    }
    return t;
}

// Dodgson step: from the table for n-1 to the table for n via
// Delta(n)_i^j = Delta(n-1)_i^j + C(n-1,i) C(n-1,j), with the new last
// row/column equal to C(n-1, .). The incremental path for diagonal sweeps.
inline MinorTable dodgson_extend(const MinorTable& t) {
    const int n = t.n + 1;
    MinorTable out;
    out.n = n;
    out.delta.assign(static_cast<std::size_t>(n) * n, mpz_class(0));
    for (int i = 0; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j)
            out.at(i, j) = t.at(i, j) + binomial(n - 1, i) * binomial(n - 1, j);
    for (int i = 0; i < n; ++i) {
        out.at(i, n - 1) = binomial(n - 1, i);
        out.at(n - 1, i) = out.at(i, n - 1);
    }
    return out;
}

// Jacobi's identity specialized to det M(n) = 1: the r-row/r-column minor
// Delta(n)_{i_1..i_r}^{j_1..j_r} equals the r x r determinant of the
// one-row-one-column minors delta[i_u][j_v]. Index lists must be strictly
// increasing.
inline mpz_class jacobi_minor(const MinorTable& t, const std::vector<int>& rows,
                              const std::vector<int>& cols) {
    if (rows.size() != cols.size())
        throw std::invalid_argument("jacobi_minor: mismatched index set sizes");
    auto check_sorted = [&](const std::vector<int>& ix) {
        for (std::size_t u = 0; u < ix.size(); ++u) {
            if (ix[u] < 0 || ix[u] >= t.n)
                throw std::invalid_argument("jacobi_minor: index out of range");
            if (u > 0 && ix[u - 1] >= ix[u])
                throw std::invalid_argument("jacobi_minor: indices must be strictly increasing");
        }
    };
    check_sorted(rows);
    check_sorted(cols);

    const int r = static_cast<int>(rows.size());
    IntMatrix b(r, r);
    for (int u = 0; u < r; ++u)
        for (int v = 0; v < r; ++v) b(u, v) = t.at(rows[u], cols[v]);
    return det_bareiss(b);
}

}  // namespace hardinian
