#include "lffz/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <fmt/format.h>

#include "lffz/errors.hpp"
#include "lffz/numeric.hpp"
#include "lffz/random.hpp"

namespace lffz {

namespace {

// Rows of a column set as W 64-bit words. During enumeration we track two
// masks: rows hit exactly once (`ones`) and rows hit at least twice (`many`).
// Adding column c:  many' = many | (ones & c);  ones' = (ones ^ c) & ~many'.
// The current subset is a stopping set iff ones == 0.
template <std::size_t W>
using Words = std::array<std::uint64_t, W>;

template <std::size_t W>
struct State {
    Words<W> ones{};
    Words<W> many{};

    State add(const Words<W>& c) const {
        State next;
        for (std::size_t w = 0; w < W; ++w) {
            next.many[w] = many[w] | (ones[w] & c[w]);
            next.ones[w] = (ones[w] ^ c[w]) & ~next.many[w];
        }
        return next;
    }

    bool stopping() const {
        for (std::size_t w = 0; w < W; ++w) {
            if (ones[w] != 0) {
                return false;
            }
        }
        return true;
    }

    bool owns_private_row(const Words<W>& c) const {
        for (std::size_t w = 0; w < W; ++w) {
            if ((c[w] & ones[w]) != 0) {
                return true;
            }
        }
        return false;
    }
};

template <std::size_t W>
std::vector<Words<W>> load_columns(const MappingMatrix& matrix) {
    std::vector<Words<W>> cols(matrix.cols());
    Support s;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        matrix.support(i + 1, s);
        cols[i].fill(0);
        for (const std::uint32_t r : s) {
            cols[i][r / 64] |= std::uint64_t{1} << (r % 64);
        }
    }
    return cols;
}

// Lexicographically first subset of exactly `size` columns whose state
// satisfies `accept` at the leaf; indices are 0-based.
template <std::size_t W, typename Accept>
class SubsetSearch {
  public:
    SubsetSearch(const std::vector<Words<W>>& cols, std::size_t size, Accept accept)
        : cols_(cols), size_(size), accept_(accept), chosen_(size) {}

    std::optional<std::vector<std::size_t>> run() {
        if (size_ == 0 || size_ > cols_.size()) {
            return std::nullopt;
        }
        if (descend(0, 0, State<W>{})) {
            return chosen_;
        }
        return std::nullopt;
    }

  private:
    bool descend(std::size_t depth, std::size_t start, const State<W>& state) {
        const std::size_t n = cols_.size();
        const std::size_t last = n - (size_ - depth);
        for (std::size_t c = start; c <= last; ++c) {
            chosen_[depth] = c;
            const State<W> next = state.add(cols_[c]);
            if (depth + 1 == size_) {
                if (accept_(next, chosen_)) {
                    return true;
                }
            } else if (descend(depth + 1, c + 1, next)) {
                return true;
            }
        }
        return false;
    }

    const std::vector<Words<W>>& cols_;
    std::size_t size_;
    Accept accept_;
    std::vector<std::size_t> chosen_;
};

template <std::size_t W, typename Accept>
std::optional<std::vector<std::size_t>> search(const std::vector<Words<W>>& cols, std::size_t size,
                                               Accept accept) {
    return SubsetSearch<W, Accept>(cols, size, accept).run();
}

// Calls f.template operator()<W>() with the smallest supported W >= m/64.
template <typename F>
auto dispatch_width(std::size_t m, F&& f) {
    const std::size_t words = (m + 63) / 64;
    if (words <= 1) {
        return f.template operator()<1>();
    }
    if (words <= 2) {
        return f.template operator()<2>();
    }
    if (words <= 4) {
        return f.template operator()<4>();
    }
    if (words <= 8) {
        return f.template operator()<8>();
    }
    if (words <= 16) {
        return f.template operator()<16>();
    }
    if (words <= 32) {
        return f.template operator()<32>();
    }
    throw BudgetExceeded(fmt::format("oracle supports at most 2048 rows, matrix has {}", m));
}

std::uint64_t subsets_up_to(std::size_t n, std::size_t max_size) {
    BigInt total = 0;
    for (std::size_t s = 1; s <= max_size; ++s) {
        total += binomial(n, s);
    }
    if (total > BigInt(UINT64_MAX)) {
        return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(total);
}

void require_budget(std::uint64_t needed, std::uint64_t budget, std::string_view what) {
    if (needed > budget) {
        throw BudgetExceeded(fmt::format("{} needs {} subset evaluations, budget is {}", what, needed, budget));
    }
}

std::vector<std::size_t> to_one_based(const std::vector<std::size_t>& zero_based) {
    std::vector<std::size_t> out(zero_based);
    for (auto& x : out) {
        ++x;
    }
    return out;
}

void self_check_witness(const MappingMatrix& matrix, const std::vector<std::size_t>& witness) {
    if (!is_stopping_set(matrix, witness)) {
        throw std::logic_error("oracle produced a witness that is not a stopping set");
    }
}

// Smallest stopping subset of `set` in (size, lexicographic) order.
std::vector<std::size_t> shrink_witness(const MappingMatrix& matrix, std::vector<std::size_t> set) {
    std::sort(set.begin(), set.end());
    if (set.size() > 20) {
        return set;
    }
    const std::size_t k = set.size();
    for (std::size_t size = 1; size < k; ++size) {
        std::vector<bool> pick(k, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            std::vector<std::size_t> sub;
            for (std::size_t i = 0; i < k; ++i) {
                if (pick[i]) {
                    sub.push_back(set[i]);
                }
            }
            if (is_stopping_set(matrix, sub)) {
                return sub;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return set;
}

} // namespace

bool is_stopping_set(const MappingMatrix& matrix, const std::vector<std::size_t>& columns) {
    if (columns.empty()) {
        return false;
    }
    const CounterArray counts = counter_array(matrix, columns);
    return std::none_of(counts.begin(), counts.end(), [](std::int64_t c) { return c == 1; });
}

StoppingReport stopping_distance(const MappingMatrix& matrix, std::size_t max_d, std::uint64_t budget) {
    const std::size_t n = matrix.cols();
    if (max_d < 1 || max_d > n) {
        throw std::invalid_argument(fmt::format("stopping_distance: max_d={} outside 1..{}", max_d, n));
    }
    require_budget(subsets_up_to(n, max_d), budget, "stopping_distance");

    StoppingReport report;
    report.mode = SearchMode::Exhaustive;
    report.checked_bound = max_d;
    report.distance = n + 1;

    auto found = dispatch_width(matrix.rows(), [&]<std::size_t W>() -> std::optional<std::vector<std::size_t>> {
        const auto cols = load_columns<W>(matrix);
        for (std::size_t size = 1; size <= max_d; ++size) {
            auto hit = search<W>(cols, size, [](const State<W>& s, const std::vector<std::size_t>&) {
                return s.stopping();
            });
            if (hit) {
                return hit;
            }
        }
        return std::nullopt;
    });

    if (found) {
        report.witness = to_one_based(*found);
        self_check_witness(matrix, *report.witness);
        report.distance = report.witness->size();
    }
    return report;
}

DecodabilityVerdict is_d_decodable(const MappingMatrix& matrix, std::size_t d, std::uint64_t budget) {
    if (d > matrix.cols()) {
        throw std::invalid_argument(fmt::format("is_d_decodable: d={} exceeds n={}", d, matrix.cols()));
    }
    if (d == 0) {
        return {true, std::nullopt};
    }
    const StoppingReport report = stopping_distance(matrix, d, budget);
    return {report.is_sentinel(), report.witness};
}

std::string SampledVerdict::note() const {
    if (counterexample_found) {
        return fmt::format("counterexample found within {} trials (seed {})", trials, seed);
    }
    return fmt::format("no counterexample in {} trials (seed {})", trials, seed);
}

SampledVerdict is_d_decodable_sampled(const MappingMatrix& matrix, std::size_t d, std::uint64_t trials,
                                      std::uint64_t seed) {
    const std::size_t n = matrix.cols();
    if (trials < 1) {
        throw std::invalid_argument("is_d_decodable_sampled: trials must be at least 1");
    }
    if (d < 1 || d > n) {
        throw std::invalid_argument(fmt::format("is_d_decodable_sampled: d={} outside 1..{}", d, n));
    }
    SampledVerdict verdict;
    verdict.trials = trials;
    verdict.seed = seed;

    auto hit = dispatch_width(matrix.rows(), [&]<std::size_t W>() -> std::optional<std::vector<std::size_t>> {
        const auto cols = load_columns<W>(matrix);
        std::vector<std::size_t> scratch;
        std::vector<std::size_t> subset;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng(derive_seed(seed, {t}));
            const std::size_t size = 1 + static_cast<std::size_t>(rng.below(d));
            sample_subset(rng, n, size, scratch, subset);
            State<W> state;
            for (const std::size_t u : subset) {
                state = state.add(cols[u - 1]);
            }
            if (state.stopping()) {
                return subset;
            }
        }
        return std::nullopt;
    });

    if (hit) {
        verdict.counterexample_found = true;
        verdict.witness = shrink_witness(matrix, *hit);
        self_check_witness(matrix, *verdict.witness);
    }
    return verdict;
}

bool is_d_fpf(const MappingMatrix& matrix, std::size_t d, std::uint64_t budget) {
    const std::size_t n = matrix.cols();
    if (d + 1 > n) {
        throw std::invalid_argument(fmt::format("is_d_fpf: d+1={} exceeds n={}", d + 1, n));
    }
    require_budget(binomial_saturating(n, d + 1), budget, "is_d_fpf");
    return dispatch_width(matrix.rows(), [&]<std::size_t W>() {
        const auto cols = load_columns<W>(matrix);
        // Look for a (d+1)-subset where some member has no private row.
        auto bad = search<W>(cols, d + 1, [&](const State<W>& s, const std::vector<std::size_t>& chosen) {
            return std::any_of(chosen.begin(), chosen.end(),
                               [&](std::size_t c) { return !s.owns_private_row(cols[c]); });
        });
        return !bad.has_value();
    });
}

bool covering_strength_at_least(const MappingMatrix& matrix, std::size_t d, std::uint64_t budget) {
    const std::size_t n = matrix.cols();
    const std::size_t m = matrix.rows();
    if (d < 1 || d > n) {
        throw std::invalid_argument(fmt::format("covering_strength_at_least: d={} outside 1..{}", d, n));
    }
    if (d >= 63 || (std::uint64_t{1} << d) > m) {
        return false;
    }
    require_budget(binomial_saturating(n, d), budget, "covering_strength_at_least");

    std::vector<std::vector<std::uint8_t>> cols(n);
    for (std::size_t i = 0; i < n; ++i) {
        cols[i] = matrix.column(i + 1);
    }
    const std::size_t patterns = std::size_t{1} << d;
    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i) {
        pick[i] = i;
    }
    std::vector<bool> seen(patterns);
    while (true) {
        std::fill(seen.begin(), seen.end(), false);
        std::size_t distinct = 0;
        for (std::size_t r = 0; r < m && distinct < patterns; ++r) {
            std::size_t pattern = 0;
            for (std::size_t j = 0; j < d; ++j) {
                pattern |= static_cast<std::size_t>(cols[pick[j]][r]) << j;
            }
            if (!seen[pattern]) {
                seen[pattern] = true;
                ++distinct;
            }
        }
        if (distinct < patterns) {
            return false;
        }
        // Next combination in lexicographic order.
        std::size_t i = d;
        while (i > 0 && pick[i - 1] == n - d + (i - 1)) {
            --i;
        }
        if (i == 0) {
            return true;
        }
        ++pick[i - 1];
        for (std::size_t j = i; j < d; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

} // namespace lffz
