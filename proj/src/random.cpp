#include "lffz/random.hpp"

#include <numeric>
#include <stdexcept>

namespace lffz {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Rng::below: bound must be positive");
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = 0;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

void sample_subset(Rng& rng, std::size_t n, std::size_t count, std::vector<std::size_t>& scratch,
                   std::vector<std::size_t>& out) {
    if (count > n) {
        throw std::invalid_argument("sample_subset: count exceeds universe size");
    }
    if (scratch.size() != n) {
        scratch.resize(n);
        std::iota(scratch.begin(), scratch.end(), std::size_t{1});
    }
    out.clear();
    thread_local std::vector<std::size_t> swaps;
    swaps.clear();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(scratch[i], scratch[j]);
        swaps.push_back(j);
        out.push_back(scratch[i]);
    }
    // Undo so scratch is the identity again; each draw depends only on rng.
    for (std::size_t i = count; i-- > 0;) {
        std::swap(scratch[i], scratch[swaps[i]]);
    }
}

} // namespace lffz
