#pragma once

// Seed derivation, a seeded 64-bit hash, and portable sampling helpers.
//
// std::uniform_int_distribution is implementation-defined, so bounded draws
// are done here by rejection on top of std::mt19937_64 (whose output sequence
// is fixed by the standard). Same seed, same numbers, on every toolchain.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace lffz {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive combination of a seed with a list of words.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = mix64(seed);
    for (const std::uint64_t p : parts) {
        h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    }
    return h;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 engine_;
};

/// Uniform random `count`-subset of {1..n} via a partial Fisher-Yates shuffle.
/// Returned in draw order. `scratch` holds the identity permutation between
/// calls and is reused to avoid allocation.
void sample_subset(Rng& rng, std::size_t n, std::size_t count, std::vector<std::size_t>& scratch,
                   std::vector<std::size_t>& out);

} // namespace lffz
