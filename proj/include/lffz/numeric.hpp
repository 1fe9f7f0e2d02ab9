#pragma once

// Exact integer helpers shared by constructions and bounds.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lffz {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) clamped to UINT64_MAX on overflow.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);

BigInt power(std::uint64_t base, unsigned exponent);

/// Smallest b with 2^b >= x (x >= 1). ceil_log2(1) == 0.
unsigned ceil_log2(const BigInt& x);
unsigned ceil_log2(std::uint64_t x);

/// floor(sqrt(x)).
std::uint64_t isqrt(std::uint64_t x);

bool is_prime(std::uint64_t x);

/// Smallest prime >= x.
std::uint64_t next_prime(std::uint64_t x);

/// The first `count` primes: 2, 3, 5, ...
std::vector<std::uint64_t> first_primes(std::size_t count);

/// If q = p^e for a prime p and e >= 1, returns {p, e}; otherwise {0, 0}.
struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
    explicit operator bool() const { return prime != 0; }
};
PrimePower prime_power(std::uint64_t q);

} // namespace lffz
