#pragma once

// Small finite fields backed by log/antilog tables.

#include <cstdint>
#include <vector>

namespace lffz {

/// GF(2^ell) for 2 <= ell <= 16, elements as bit-packed polynomials over GF(2).
class BinaryField {
  public:
    static constexpr unsigned kMinDegree = 2;
    static constexpr unsigned kMaxDegree = 16;

    /// Throws std::out_of_range outside [kMinDegree, kMaxDegree].
    explicit BinaryField(unsigned ell);

    /// Fixed primitive polynomial for degree ell, including the x^ell term.
    static std::uint32_t primitive_polynomial(unsigned ell);

    unsigned degree() const noexcept { return ell_; }
    std::uint32_t polynomial() const noexcept { return poly_; }
    std::uint32_t order() const noexcept { return (1U << ell_) - 1; }

    /// alpha^e where alpha is the class of x.
    std::uint32_t alpha_power(std::uint64_t e) const { return exp_[e % order()]; }
    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
    /// Multiplicative order of a non-zero element.
    std::uint32_t element_order(std::uint32_t a) const;

  private:
    unsigned ell_;
    std::uint32_t poly_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

/// GF(p^r) with elements encoded as integers whose base-p digits are the
/// polynomial coefficients (digit i is the coefficient of x^i). The modulus is
/// the first primitive monic polynomial found in increasing code order.
class PrimePowerField {
  public:
    static constexpr std::uint32_t kMaxSize = 1U << 12;

    /// Throws std::invalid_argument unless p is prime, r >= 1 and p^r <= kMaxSize.
    PrimePowerField(std::uint32_t p, unsigned r);

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return r_; }
    std::uint32_t size() const noexcept { return size_; }
    /// Lower coefficients of the monic modulus as a base-p integer.
    std::uint32_t modulus_code() const noexcept { return modulus_code_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * size_ + b]; }
    std::uint32_t negate(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, negate(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inverse(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  private:
    std::uint32_t p_;
    unsigned r_;
    std::uint32_t size_;
    std::uint32_t modulus_code_ = 0;
    std::vector<std::uint32_t> add_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

} // namespace lffz
