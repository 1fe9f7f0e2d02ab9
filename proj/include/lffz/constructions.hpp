#pragma once

// Explicit d-decodable mapping matrices. Every builder returns a generated
// (column-on-demand) matrix with its ConstructionSpec attached; build(spec)
// reproduces the same matrix from the spec alone.
//
// When a construction yields more columns than requested, the rightmost
// columns are dropped.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lffz/matrix.hpp"
#include "lffz/numeric.hpp"

namespace lffz {

/// I_n when d >= n, otherwise [I_{n-1} | 1].
MappingMatrix identity_family(std::size_t n, std::size_t d);

/// Binary encodings of 1..n, most significant bit in the top row. d = 2.
MappingMatrix unique_columns(std::size_t n);

/// First n weight-k vectors of length min{m : C(m,k) >= n} in colex order.
MappingMatrix unique_columns_weight_k(std::size_t n, std::size_t k);

/// Smallest number of primes whose product reaches n^exponent, exactly.
std::size_t egh_prime_count(std::size_t n, unsigned exponent);
/// Rows of the EGH matrix for that exponent: sum of the first k primes.
std::size_t egh_rows(std::size_t n, unsigned exponent);
/// EGH with an explicit FPF exponent; the result is exponent-FPF and so
/// (exponent+1)-decodable.
MappingMatrix egh_fpf(std::size_t n, unsigned exponent);
/// d-decodable EGH: builds the max(1, d-1)-FPF matrix.
MappingMatrix egh(std::size_t n, std::size_t d);

/// Smallest prime q with q^2 >= n.
std::uint64_t ols_prime(std::size_t n);
/// d blocks of q rows. Throws std::invalid_argument when d > q + 1.
MappingMatrix ols(std::size_t n, std::size_t d);

/// Construction A. With `forced_split` the split factor is fixed to that
/// value instead of minimized (base cases I_n for n <= d and [I_d | 1] for
/// n = d + 1). Throws std::invalid_argument for d < 1.
MappingMatrix recursive_a(std::size_t n, std::size_t d, std::optional<std::size_t> forced_split = std::nullopt);
std::size_t recursive_a_rows(std::size_t n, std::size_t d, std::optional<std::size_t> forced_split = std::nullopt);

/// Column count of Construction B's M_m (saturating), computed by the argmax
/// recursion. m >= 3.
std::uint64_t recursive_b_columns(std::size_t m);
/// Rows of the smallest M_m with at least n columns.
std::size_t recursive_b_rows(std::size_t n);
/// Construction B (d = 3), trimmed to n columns. n >= 3.
MappingMatrix recursive_b(std::size_t n);

/// Construction C: (d,k)-decodable with every column of weight exactly k.
/// Throws std::invalid_argument when no feasible weight split exists.
MappingMatrix recursive_c(std::size_t n, std::size_t d, std::size_t k);
/// Row count, or nullopt when infeasible.
std::optional<std::size_t> recursive_c_rows(std::size_t n, std::size_t d, std::size_t k);

/// Points of the smallest Bose STS(6t+3) with at least n blocks.
std::size_t steiner_points(std::size_t n);
/// Bose STS incidence matrix (d = 3, k = 3), trimmed to n.
MappingMatrix steiner_triple(std::size_t n);
/// Bose STS(6t+3) block list, 0-based points.
std::vector<Support> bose_triples(std::size_t t);

/// Blocks of the inversive plane S(3, q+1, q^2+1), sorted, 0-based points
/// (point q^2 is infinity). Also returns the modulus code of GF(q^2).
struct InversivePlaneBlocks {
    std::vector<Support> blocks;
    std::uint32_t modulus_code = 0;
};
InversivePlaneBlocks inversive_plane_blocks(std::uint64_t q);
/// Incidence matrix: d = ceil((q+1)/2), k = q+1. n defaults to all blocks.
MappingMatrix inversive_plane(std::uint64_t q, std::optional<std::size_t> n = std::nullopt);

/// Array code: n = q^2 (or fewer), m = k*q, d = 2k-1. q odd prime, k in {2,3,4}, k <= q.
MappingMatrix array_code(std::uint64_t q, std::size_t k, std::optional<std::size_t> n = std::nullopt);

/// [H ; complement(H)] for the double-error-correcting BCH parity check over
/// GF(2^ell): n = 2^ell - 1, m = 4 ell, weight 2 ell, d = 4. Optional trim.
MappingMatrix bch_complement(unsigned ell, std::optional<std::size_t> n = std::nullopt);

/// Rows of the bipartite weight-2 matrix: ceil(2 sqrt n).
std::size_t bipartite_rows(std::size_t n);
/// Cross pairs between two row halves; (3,2)-decodable.
MappingMatrix bipartite_weight2(std::size_t n);

/// ceil(d log2 n / log2(2^d / (2^d - 1))), at least 1.
std::size_t covering_array_rows(std::size_t n, std::size_t d);
/// One attempt of the random covering array; no decodability gate.
MappingMatrix covering_array_attempt(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t attempt);
/// Resamples until exhaustively d-decodable. Throws RetriesExhausted.
MappingMatrix covering_array_random(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t max_retries = 64);

/// Rebuilds a matrix from its spec. Throws std::invalid_argument on bad specs.
MappingMatrix build(const ConstructionSpec& spec);

} // namespace lffz
