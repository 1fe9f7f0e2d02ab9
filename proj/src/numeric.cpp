#include "lffz/numeric.hpp"

#include <limits>

namespace lffz {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    const BigInt value = binomial(n, k);
    if (value > std::numeric_limits<std::uint64_t>::max()) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(value);
}

BigInt power(std::uint64_t base, unsigned exponent) {
    return boost::multiprecision::pow(BigInt(base), exponent);
}

unsigned ceil_log2(const BigInt& x) {
    if (x <= 1) {
        return 0;
    }
    const BigInt y = x - 1;
    return static_cast<unsigned>(boost::multiprecision::msb(y)) + 1;
}

unsigned ceil_log2(std::uint64_t x) {
    unsigned bits = 0;
    while (bits < 64 && (std::uint64_t{1} << bits) < x) {
        ++bits;
    }
    return bits;
}

std::uint64_t isqrt(std::uint64_t x) {
    std::uint64_t lo = 0;
    std::uint64_t hi = std::min<std::uint64_t>(x, 4294967295ULL);
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (mid * mid <= x) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

bool is_prime(std::uint64_t x) {
    if (x < 2) {
        return false;
    }
    for (std::uint64_t p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
            return false;
        }
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t x) {
    while (!is_prime(x)) {
        ++x;
    }
    return x;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::vector<std::uint64_t> primes;
    primes.reserve(count);
    for (std::uint64_t p = 2; primes.size() < count; ++p) {
        if (is_prime(p)) {
            primes.push_back(p);
        }
    }
    return primes;
}

PrimePower prime_power(std::uint64_t q) {
    if (q < 2) {
        return {};
    }
    std::uint64_t p = 2;
    while (q % p != 0) {
        ++p;
    }
    unsigned e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1) {
        return {};
    }
    return {p, e};
}

} // namespace lffz
