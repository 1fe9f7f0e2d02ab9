#pragma once

// Test-only helpers, including a deliberately naive stopping-set checker that
// shares no code with the library's bitset search.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "lffz/matrix.hpp"

namespace lffz::test {

inline MappingMatrix example_matrix() {
    return MappingMatrix::from_rows({
        "111000",
        "000111",
        "100100",
        "010010",
        "001001",
    });
}

inline std::vector<std::vector<int>> dense_entries(const MappingMatrix& m) {
    std::vector<std::vector<int>> e(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t c = 1; c <= m.cols(); ++c) {
        for (const auto r : m.support(c)) {
            e[r][c - 1] = 1;
        }
    }
    return e;
}

/// Visits every s-subset of {1..n} in lexicographic order until fn returns true.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t s, Fn fn) {
    if (s > n) {
        return false;
    }
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
    do {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) {
                subset.push_back(i + 1);
            }
        }
        if (fn(subset)) {
            return true;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
}

inline bool naive_is_stopping(const std::vector<std::vector<int>>& e, const std::vector<std::size_t>& subset) {
    for (const auto& row : e) {
        int sum = 0;
        for (const auto c : subset) {
            sum += row[c - 1];
        }
        if (sum == 1) {
            return false;
        }
    }
    return true;
}

/// Smallest stopping set of size <= max_size, lexicographically first.
inline std::optional<std::vector<std::size_t>> naive_smallest_stopping(const MappingMatrix& m, std::size_t max_size) {
    const auto e = dense_entries(m);
    std::optional<std::vector<std::size_t>> found;
    for (std::size_t s = 1; s <= max_size && !found; ++s) {
        for_each_subset(m.cols(), s, [&](const std::vector<std::size_t>& subset) {
            if (naive_is_stopping(e, subset)) {
                found = subset;
                return true;
            }
            return false;
        });
    }
    return found;
}

inline bool all_weights(const MappingMatrix& m, std::size_t k) {
    for (std::size_t c = 1; c <= m.cols(); ++c) {
        if (m.column_weight(c) != k) {
            return false;
        }
    }
    return true;
}

} // namespace lffz::test
