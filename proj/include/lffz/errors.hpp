#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lffz {

/// Malformed matrix file or matrix violating the mapping-matrix invariants.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive search or materialization would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two IBLTs built over different mappings were combined.
class MappingMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A randomized construction ran out of attempts; carries the last witness.
class RetriesExhausted : public std::runtime_error {
  public:
    RetriesExhausted(const std::string& what, std::vector<std::size_t> witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}

    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

  private:
    std::vector<std::size_t> witness_;
};

} // namespace lffz
