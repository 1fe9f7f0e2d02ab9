#pragma once

// Lower bounds on the minimum number of rows m*(n,d) and m*(n,d,k), and a
// per-construction table of achievable row counts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lffz {

struct LowerBound {
    std::size_t value = 0;
    /// Which bound was binding: d, log, sphere-packing, plotkin, identity,
    /// d=1, d=2, weight-one, weight-k, exact-3-2, k=d-1, k.
    std::string tag;
    /// True when the value is known to equal m* exactly.
    bool exact = false;
};

/// Requires 1 <= d <= n.
LowerBound lower_bound(std::size_t n, std::size_t d);
/// Requires 1 <= d <= n and k >= 1.
LowerBound lower_bound_k(std::size_t n, std::size_t d, std::size_t k);

/// K(s,2,3,1) = 2 C(floor(s/2), 2) + (s mod 2) floor(s/2).
std::uint64_t turan_K(std::uint64_t s);

/// min{m : C(m,2) - K(m) >= n}, cross-checked against ceil(2 sqrt n).
/// Throws std::logic_error if the two disagree.
std::size_t exact_m_32(std::size_t n);

/// ceil(2 sqrt n), computed in integers.
std::size_t ceil_two_sqrt(std::size_t n);

struct UpperEntry {
    std::string name;
    std::optional<std::size_t> rows; ///< nullopt when not applicable
    bool formula_only = false;       ///< bound, no construction
};

struct BoundsRow {
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<std::size_t> k;
    LowerBound lower;
    std::vector<UpperEntry> uppers;
    /// Name of the entry with the fewest rows (first on ties), if any applies.
    std::optional<std::string> best;

    std::optional<std::size_t> best_rows() const;
    const UpperEntry* find(const std::string& name) const;
};

/// Names of the upper-bound columns, in table order.
const std::vector<std::string>& upper_bound_names();

BoundsRow upper_bound_table(std::size_t n, std::size_t d, std::optional<std::size_t> k = std::nullopt);

} // namespace lffz
