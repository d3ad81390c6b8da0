#pragma once

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "sequence.hpp"

namespace hardinian {

// Work caps with desk-scale defaults; both overridable from the CLI.
struct Budget {
    std::uint64_t max_nodes = 100'000'000;   // backtracking placements / work units
    std::uint64_t max_states = 10'000'000;   // live DP states
};

namespace detail {

// Candidate value range for cell (i, j) given the filled row-major prefix.
//
// The rules pin each cell to the intersection of {v, v+1} over its existing
// neighbors, the band [kd-r, kd+r], and two reachability bounds toward the
// required corner value: entries never decrease along forward king moves, so
// a cell can be at most `target` and at least `target` minus the number of
// king steps left to the corner.
struct CellBounds {
    int lo, hi;
};

inline CellBounds cell_bounds(const std::vector<int>& grid, int r, int n, int k,
                              int target, int i, int j) {
    const int kd = king_distance(i, j);
    int lo = kd - r;
    if (lo < 0) lo = 0;
    int hi = kd + r;
    if (hi > target) hi = target;
    const int steps_left = std::max(n - 1 - i, k - 1 - j);
    if (lo < target - steps_left) lo = target - steps_left;
    if (i == 0 && j == 0) {
        if (lo < 0) lo = 0;
        if (hi > 0) hi = 0;
    }
    auto meet = [&](int v) {
        if (lo < v) lo = v;
        if (hi > v + 1) hi = v + 1;
    };
    if (i > 0) meet(grid[static_cast<std::size_t>(i - 1) * k + j]);
    if (j > 0) meet(grid[static_cast<std::size_t>(i) * k + j - 1]);
    if (i > 0 && j > 0) meet(grid[static_cast<std::size_t>(i - 1) * k + j - 1]);
    return {lo, hi};
}

// Row-major backtracking from `pos`; calls on_leaf once per completed grid.
// Each attempted placement is one node against the budget.
template <typename OnLeaf>
void backtrack(std::vector<int>& grid, int r, int n, int k, int target, int pos,
               std::atomic<std::uint64_t>& nodes, std::uint64_t max_nodes,
               OnLeaf&& on_leaf) {
    if (pos == n * k) {
        on_leaf(grid);
        return;
    }
    const int i = pos / k, j = pos % k;
    const CellBounds b = cell_bounds(grid, r, n, k, target, i, j);
    for (int v = b.lo; v <= b.hi; ++v) {
        if (nodes.fetch_add(1, std::memory_order_relaxed) >= max_nodes)
            throw budget_exceeded("enumerate: instance too large (node budget exhausted)");
        grid[static_cast<std::size_t>(pos)] = v;
        backtrack(grid, r, n, k, target, pos + 1, nodes, max_nodes, on_leaf);
    }
}

inline void check_params(int r, int n, int k) {
    if (r < 0) throw std::invalid_argument("enumerate: r must be non-negative");
    if (n < 1 || k < 1) throw std::invalid_argument("enumerate: dimensions must be positive");
}

}  // namespace detail

// Exhaustive count of valid r-slack n x k Hardinian arrays by cell-by-cell
// backtracking. Ground truth for everything else. With threads > 1 the
// search splits on the completions of the first row; partial counts are
// summed in a fixed order, so the result is independent of scheduling.
inline mpz_class count_brute(int r, int n, int k, const Budget& budget = {},
                             int threads = 1) {
    detail::check_params(r, n, k);
    const int target = std::max(n, k) - r - 1;
    if (target < 0) return 0;  // impossible corner: zero arrays, not an error

    std::atomic<std::uint64_t> nodes{0};
    if (threads <= 1 || n == 1) {
        mpz_class count = 0;
        std::vector<int> grid(static_cast<std::size_t>(n) * k, 0);
        detail::backtrack(grid, r, n, k, target, 0, nodes, budget.max_nodes,
                          [&](const std::vector<int>&) { ++count; });
        return count;
    }

    // Collect first-row completions, then count the rest of each in parallel.
    std::vector<std::vector<int>> first_rows;
    {
        std::vector<int> grid(static_cast<std::size_t>(n) * k, 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == k) {
                first_rows.emplace_back(grid.begin(), grid.begin() + k);
                return;
            }
            const detail::CellBounds b = detail::cell_bounds(grid, r, n, k, target, 0, pos);
            for (int v = b.lo; v <= b.hi; ++v) {
                if (nodes.fetch_add(1, std::memory_order_relaxed) >= budget.max_nodes)
                    throw budget_exceeded("enumerate: instance too large (node budget exhausted)");
                grid[static_cast<std::size_t>(pos)] = v;
                rec(pos + 1);
            }
        };
        rec(0);
    }

    const std::size_t workers =
        std::min(static_cast<std::size_t>(threads), first_rows.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::future<mpz_class>> parts;
    parts.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        parts.push_back(std::async(std::launch::async, [&]() {
            mpz_class local = 0;
            std::vector<int> grid(static_cast<std::size_t>(n) * k, 0);
            for (;;) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= first_rows.size()) break;
                std::copy(first_rows[idx].begin(), first_rows[idx].end(), grid.begin());
                detail::backtrack(grid, r, n, k, target, k, nodes, budget.max_nodes,
                                  [&](const std::vector<int>&) { ++local; });
            }
            return local;
        }));
    }
    mpz_class count = 0;
    for (auto& f : parts) count += f.get();  // associative integer sum
    return count;
}

// Yields every valid grid in deterministic lexicographic (row-major entry)
// order. Same budget semantics as count_brute.
inline void enumerate_all(int r, int n, int k,
                          const std::function<void(const ArrayGrid&)>& yield,
                          const Budget& budget = {}) {
    detail::check_params(r, n, k);
    const int target = std::max(n, k) - r - 1;
    if (target < 0) return;
    std::atomic<std::uint64_t> nodes{0};
    std::vector<int> grid(static_cast<std::size_t>(n) * k, 0);
    detail::backtrack(grid, r, n, k, target, 0, nodes, budget.max_nodes,
                      [&](const std::vector<int>& g) { yield(ArrayGrid(r, n, k, g)); });
}

inline std::vector<ArrayGrid> collect_all(int r, int n, int k, const Budget& budget = {}) {
    std::vector<ArrayGrid> out;
    enumerate_all(r, n, k, [&](const ArrayGrid& g) { out.push_back(g); }, budget);
    return out;
}

// Transfer-matrix row sweep. The state is the previous row stored as offsets
// from king distance (alphabet [-r, r]); transitions enumerate all next rows
// consistent with the three neighbor rules and the band; counts are summed
// per state in exact integers. The state map is ordered, so iteration (and
// any diagnostics) is reproducible run to run.
inline mpz_class count_dp(int r, int n, int k, const Budget& budget = {}) {
    detail::check_params(r, n, k);
    if (r > 100)
        throw std::invalid_argument("count_dp: r too large for the packed row state");
    const int target = std::max(n, k) - r - 1;
    if (target < 0) return 0;

    using State = std::vector<std::int8_t>;
    std::map<State, mpz_class> states;

    std::vector<int> row(static_cast<std::size_t>(k), 0);
    // Enumerates rows at row-index i consistent with `prev` (null for row 0),
    // handing each completed row's offset form to sink.
    auto rows_from = [&](const std::vector<int>* prev, int i, auto&& sink) {
        std::function<void(int)> rec = [&](int j) {
            if (j == k) {
                State s(static_cast<std::size_t>(k));
                for (int t = 0; t < k; ++t)
                    s[static_cast<std::size_t>(t)] =
                        static_cast<std::int8_t>(row[static_cast<std::size_t>(t)] - king_distance(i, t));
                sink(s);
                return;
            }
            const int kd = king_distance(i, j);
            int lo = std::max(kd - r, 0);
            int hi = std::min(kd + r, target);
            const int steps_left = std::max(n - 1 - i, k - 1 - j);
            if (lo < target - steps_left) lo = target - steps_left;
            if (i == 0 && j == 0) {
                lo = std::max(lo, 0);
                hi = std::min(hi, 0);
            }
            auto meet = [&](int v) {
                lo = std::max(lo, v);
                hi = std::min(hi, v + 1);
            };
            if (prev) {
                meet((*prev)[static_cast<std::size_t>(j)]);
                if (j > 0) meet((*prev)[static_cast<std::size_t>(j - 1)]);
            }
            if (j > 0) meet(row[static_cast<std::size_t>(j - 1)]);
            for (int v = lo; v <= hi; ++v) {
                row[static_cast<std::size_t>(j)] = v;
                rec(j + 1);
            }
        };
        rec(0);
    };

    rows_from(nullptr, 0, [&](const State& s) { states[s] += 1; });

    std::vector<int> prev_row(static_cast<std::size_t>(k));
    for (int i = 1; i < n; ++i) {
        std::map<State, mpz_class> next_states;
        for (const auto& [state, cnt] : states) {
            for (int t = 0; t < k; ++t)
                prev_row[static_cast<std::size_t>(t)] =
                    state[static_cast<std::size_t>(t)] + king_distance(i - 1, t);
            rows_from(&prev_row, i, [&](const State& s) {
                next_states[s] += cnt;
                if (next_states.size() > budget.max_states)
                    throw budget_exceeded("count_dp: live state count exceeds budget");
            });
        }
        states.swap(next_states);
    }

    // The reachability prune forces the corner cell on the last row, so every
    // surviving state is accepting.
    mpz_class total = 0;
    for (const auto& [state, cnt] : states) total += cnt;
    return total;
}

}  // namespace hardinian
