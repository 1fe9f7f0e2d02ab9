#pragma once

// Enumerative ground truth for mapping matrices.
//
// A non-empty set S of columns is a stopping set when its counter array has
// no entry equal to 1. s(M) is the size of the smallest stopping set and M is
// d-decodable iff s(M) >= d + 1. Everything here is checked by enumeration
// (or by sampling, where enumeration is out of budget).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lffz/matrix.hpp"

namespace lffz {

/// Default cap on the number of subsets an exhaustive search may visit.
inline constexpr std::uint64_t kDefaultSubsetBudget = 100'000'000;

enum class SearchMode { Exhaustive, Sampled };

struct StoppingReport {
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t trials = 0; ///< Sampled mode only.
    std::uint64_t seed = 0;   ///< Sampled mode only.
    /// Size of the smallest stopping set found, or n + 1 if none was found
    /// among subsets of size <= checked_bound.
    std::size_t distance = 0;
    /// Smallest stopping set found, ordered by (size, lexicographic); 1-based.
    std::optional<std::vector<std::size_t>> witness;
    std::size_t checked_bound = 0;

    bool is_sentinel() const noexcept { return !witness.has_value(); }
};

/// Exhaustive search over subsets of size 1..max_d in increasing size.
/// Throws std::invalid_argument unless 1 <= max_d <= n, and BudgetExceeded when
/// sum_{s <= max_d} C(n, s) > budget.
StoppingReport stopping_distance(const MappingMatrix& matrix, std::size_t max_d,
                                 std::uint64_t budget = kDefaultSubsetBudget);

struct DecodabilityVerdict {
    bool decodable = false;
    std::optional<std::vector<std::size_t>> witness;
};

/// True iff no stopping set of size <= d exists. d = 0 is trivially true.
DecodabilityVerdict is_d_decodable(const MappingMatrix& matrix, std::size_t d,
                                   std::uint64_t budget = kDefaultSubsetBudget);

struct SampledVerdict {
    bool counterexample_found = false;
    std::optional<std::vector<std::size_t>> witness;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string note() const;
};

/// Draws `trials` subsets; each trial picks a size uniformly in 1..d and a
/// uniform subset of that size. A found stopping set is shrunk to a smallest
/// stopping subset of itself before being reported.
SampledVerdict is_d_decodable_sampled(const MappingMatrix& matrix, std::size_t d, std::uint64_t trials,
                                      std::uint64_t seed);

/// Every (d+1)-column sub-matrix contains all d+1 unit rows.
bool is_d_fpf(const MappingMatrix& matrix, std::size_t d, std::uint64_t budget = kDefaultSubsetBudget);

/// Every d-column sub-matrix shows all 2^d row patterns. False when 2^d > m.
bool covering_strength_at_least(const MappingMatrix& matrix, std::size_t d,
                                std::uint64_t budget = kDefaultSubsetBudget);

/// True iff the counter array of `columns` has no entry equal to 1.
bool is_stopping_set(const MappingMatrix& matrix, const std::vector<std::size_t>& columns);

} // namespace lffz
