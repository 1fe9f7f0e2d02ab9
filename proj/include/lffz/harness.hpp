#pragma once

// Experiment drivers shared by the CLI and the tests: listing-success
// simulation, bounds tables, and the two-party reconciliation demo.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <vector>

#include "lffz/bounds.hpp"
#include "lffz/iblt.hpp"

namespace lffz {

inline constexpr std::uint64_t kDefaultTrials = 100'000;

struct SimulationConfig {
    std::shared_ptr<const CellMapping> mapping;
    std::vector<std::size_t> set_sizes;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct SimulationPoint {
    std::size_t set_size = 0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double success_rate() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / trials; }
};

/// For each N, draws `trials` uniform N-subsets of {1..n} (trial t seeded from
/// (seed, N, t)), inserts them into a fresh plain IBLT and lists. A trial
/// succeeds when listing returns exactly the inserted set. Results do not
/// depend on the worker count.
std::vector<SimulationPoint> simulate(const SimulationConfig& config);

/// CSV with header `N,success_rate`.
void write_simulation_csv(std::ostream& out, const std::vector<SimulationPoint>& points);

/// CSV with header `n,d,k,lower,lower_tag,<construction>...,best`; blank cells
/// mark constructions that do not apply. Formula-only columns carry the
/// suffix `:bound-only`.
void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows);

/// Whitespace-separated element indices; `#` starts a comment. Duplicates are
/// rejected with FormatError.
std::vector<std::size_t> read_set(std::istream& in);
std::vector<std::size_t> read_set(const std::filesystem::path& path);

/// IBLT(A) - IBLT(B), then list. positive = A \ B, negative = B \ A on success.
ListingOutcome reconcile(const std::shared_ptr<const CellMapping>& mapping, const std::vector<std::size_t>& a,
                         const std::vector<std::size_t>& b);

} // namespace lffz
