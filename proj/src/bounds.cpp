#include "lffz/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "lffz/constructions.hpp"
#include "lffz/numeric.hpp"

namespace lffz {

namespace {

void consider(LowerBound& best, std::size_t value, const char* tag) {
    if (value > best.value) {
        best.value = value;
        best.tag = tag;
    }
}

// Sphere packing for minimum distance d+1: radius floor(d/2).
std::size_t sphere_packing(std::size_t n, std::size_t d) {
    BigInt volume = 0;
    for (std::size_t i = 0; i <= d / 2; ++i) {
        volume += binomial(n, i);
    }
    return ceil_log2(volume);
}

} // namespace

LowerBound lower_bound(std::size_t n, std::size_t d) {
    if (d < 1 || d > n) {
        throw std::invalid_argument(fmt::format("lower bound needs 1 <= d <= n, got n={} d={}", n, d));
    }
    if (d == 1) {
        return {1, "d=1", true};
    }
    const std::size_t log_term = ceil_log2(static_cast<std::uint64_t>(n) + 1);
    if (d == 2) {
        return {log_term, "d=2", true};
    }
    if (d == n) {
        return {n, "identity", true};
    }
    if (2 * n < 3 * (d + 1)) {
        return {n - 1, "plotkin", true};
    }
    LowerBound best{d, "d", false};
    consider(best, log_term, "log");
    consider(best, sphere_packing(n, d), "sphere-packing");
    return best;
}

LowerBound lower_bound_k(std::size_t n, std::size_t d, std::size_t k) {
    if (k < 1) {
        throw std::invalid_argument("lower bound needs k >= 1");
    }
    const LowerBound general = lower_bound(n, d);
    if (d == 1) {
        return {k, "d=1", true};
    }
    if (k == 1) {
        return {n, "weight-one", true};
    }
    if (d == 2) {
        std::size_t m = k;
        while (binomial_saturating(m, k) < n) {
            ++m;
        }
        return {m, "weight-k", true};
    }
    if (d == 3 && k == 2) {
        return {exact_m_32(n), "exact-3-2", true};
    }
    LowerBound best{general.value, general.tag, false};
    consider(best, k, "k");
    if (k + 1 == d) {
        // Counting argument: n <= C(m, d-1) (1 - 1/d), in exact integers.
        std::size_t m = k;
        while (binomial(m, k) * (d - 1) < BigInt(n) * d) {
            ++m;
        }
        consider(best, m, "k=d-1");
        // Closed form (d-1)/e * (nd/(d-1))^(1/(d-1)), rounded up after a small
        // downward guard so it never exceeds the exact counting bound.
        const double x = static_cast<double>(d - 1) / std::exp(1.0) *
                         std::pow(static_cast<double>(n) * d / (d - 1), 1.0 / static_cast<double>(d - 1));
        consider(best, static_cast<std::size_t>(std::ceil(x - 1e-9)), "k=d-1");
    }
    return best;
}

std::uint64_t turan_K(std::uint64_t s) {
    const std::uint64_t h = s / 2;
    return (h == 0 ? 0 : h * (h - 1)) + (s % 2) * h;
}

std::size_t ceil_two_sqrt(std::size_t n) {
    const std::uint64_t four_n = 4 * static_cast<std::uint64_t>(n);
    std::uint64_t m = isqrt(four_n);
    if (m * m < four_n) {
        ++m;
    }
    return static_cast<std::size_t>(m);
}

std::size_t exact_m_32(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("exact_m_32 needs n >= 1");
    }
    std::uint64_t m = 2;
    while (m * (m - 1) / 2 - turan_K(m) < n) {
        ++m;
    }
    const std::size_t closed = ceil_two_sqrt(n);
    if (m != closed) {
        throw std::logic_error(
            fmt::format("exact_m_32 scan gives {} but ceil(2 sqrt {}) is {}", m, n, closed));
    }
    return closed;
}

std::optional<std::size_t> BoundsRow::best_rows() const {
    if (!best) {
        return std::nullopt;
    }
    return find(*best)->rows;
}

const UpperEntry* BoundsRow::find(const std::string& name) const {
    for (const auto& e : uppers) {
        if (e.name == name) {
            return &e;
        }
    }
    return nullptr;
}

const std::vector<std::string>& upper_bound_names() {
    static const std::vector<std::string> names{
        "identity", "unique",     "egh",     "ols",      "recursive-a", "recursive-b",     "recursive-c",
        "steiner-triple", "inversive-plane", "array-code", "bch", "bipartite", "covering-random", "simplex",
        "ls-ldpc",
    };
    return names;
}

namespace {

using Rows = std::optional<std::size_t>;

Rows identity_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (k) {
        return *k == 1 ? Rows(n) : std::nullopt;
    }
    return d >= n ? n : n - 1;
}

Rows unique_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (d > 2) {
        return std::nullopt;
    }
    if (!k) {
        return static_cast<std::size_t>(ceil_log2(static_cast<std::uint64_t>(n) + 1));
    }
    std::size_t m = *k;
    while (binomial_saturating(m, *k) < n) {
        ++m;
    }
    return m;
}

Rows egh_table_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    const unsigned e = static_cast<unsigned>(std::max<std::size_t>(1, d - 1));
    if (k && egh_prime_count(n, e) != *k) {
        return std::nullopt;
    }
    return egh_rows(n, e);
}

Rows ols_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    const std::size_t blocks = k.value_or(d);
    const std::uint64_t q = ols_prime(n);
    if (blocks < d || blocks > q + 1) {
        return std::nullopt;
    }
    return blocks * q;
}

Rows steiner_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (d > 3 || (k && *k != 3)) {
        return std::nullopt;
    }
    return steiner_points(n);
}

Rows inversive_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    for (std::uint64_t q = 2; q <= 1024; ++q) {
        if (!prime_power(q) || (q + 2) / 2 < d || q * (q * q + 1) < n) {
            continue;
        }
        if (k && *k != q + 1) {
            continue;
        }
        return static_cast<std::size_t>(q * q + 1);
    }
    return std::nullopt;
}

Rows array_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    const std::size_t blocks = k.value_or(std::max<std::size_t>(2, (d + 2) / 2));
    if (blocks < 2 || blocks > 4 || 2 * blocks - 1 < d) {
        return std::nullopt;
    }
    std::uint64_t q = 3;
    while (q * q < n || q < blocks) {
        q = next_prime(q + 1);
    }
    return blocks * q;
}

Rows bch_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (d > 4) {
        return std::nullopt;
    }
    const unsigned ell = std::max(2U, ceil_log2(static_cast<std::uint64_t>(n) + 1));
    if (ell > 16 || (k && *k != 2 * ell)) {
        return std::nullopt;
    }
    return 4 * ell;
}

Rows bipartite_table_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (d > 3 || (k && *k != 2)) {
        return std::nullopt;
    }
    return bipartite_rows(n);
}

Rows covering_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (k || d > 62) {
        return std::nullopt;
    }
    return covering_array_rows(n, d);
}

// n = 2^ell - 1 and d <= 2^(ell-1) - 1: m = n - ell.
Rows simplex_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (k) {
        return std::nullopt;
    }
    const unsigned ell = ceil_log2(static_cast<std::uint64_t>(n) + 1);
    if (ell < 2 || ell >= 63 || (std::uint64_t{1} << ell) - 1 != n || d > (std::uint64_t{1} << (ell - 1)) - 1) {
        return std::nullopt;
    }
    return n - ell;
}

// d = 5, k = 3: m = 6v + 3 with (2v+1)(3v+1) >= n.
Rows ls_ldpc_rows(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    if (d > 5 || (k && *k != 3)) {
        return std::nullopt;
    }
    std::uint64_t v = 1;
    while ((2 * v + 1) * (3 * v + 1) < n) {
        ++v;
    }
    return static_cast<std::size_t>(6 * v + 3);
}

} // namespace

BoundsRow upper_bound_table(std::size_t n, std::size_t d, std::optional<std::size_t> k) {
    BoundsRow row;
    row.n = n;
    row.d = d;
    row.k = k;
    row.lower = k ? lower_bound_k(n, d, *k) : lower_bound(n, d);

    auto add = [&](const char* name, Rows rows, bool formula_only = false) {
        row.uppers.push_back({name, rows, formula_only});
    };
    add("identity", identity_rows(n, d, k));
    add("unique", unique_rows(n, d, k));
    add("egh", n >= 2 ? egh_table_rows(n, d, k) : std::nullopt);
    add("ols", ols_rows(n, d, k));
    add("recursive-a", k ? std::nullopt : Rows(recursive_a_rows(n, d)));
    add("recursive-b", (!k && d <= 3 && n >= 3) ? Rows(recursive_b_rows(n)) : std::nullopt);
    add("recursive-c", k ? recursive_c_rows(n, d, *k) : std::nullopt);
    add("steiner-triple", steiner_rows(n, d, k));
    add("inversive-plane", inversive_rows(n, d, k), true);
    add("array-code", array_rows(n, d, k));
    add("bch", bch_rows(n, d, k));
    add("bipartite", bipartite_table_rows(n, d, k));
    add("covering-random", covering_rows(n, d, k), true);
    add("simplex", simplex_rows(n, d, k), true);
    add("ls-ldpc", ls_ldpc_rows(n, d, k), true);

    for (const auto& e : row.uppers) {
        if (e.rows && (!row.best || *e.rows < *row.best_rows())) {
            row.best = e.name;
        }
    }
    return row;
}

} // namespace lffz
