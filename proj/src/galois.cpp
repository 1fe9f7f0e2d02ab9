#include "lffz/galois.hpp"

#include <array>
#include <stdexcept>

#include <fmt/format.h>

#include "lffz/numeric.hpp"

namespace lffz {

namespace {

constexpr std::array<std::uint32_t, 17> kPrimitive{
    0,       0,
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x89,    // x^7 + x^3 + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
};

} // namespace

BinaryField::BinaryField(unsigned ell) : ell_(ell) {
    if (ell < kMinDegree || ell > kMaxDegree) {
        throw std::out_of_range(fmt::format("GF(2^{}) unsupported; degree must be in [{}, {}]", ell, kMinDegree,
                                            kMaxDegree));
    }
    poly_ = kPrimitive[ell];
    const std::uint32_t q = 1U << ell;
    exp_.resize(q - 1);
    log_.assign(q, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x <<= 1;
        if ((x & q) != 0) {
            x ^= poly_;
        }
    }
}

std::uint32_t BinaryField::primitive_polynomial(unsigned ell) {
    if (ell < kMinDegree || ell > kMaxDegree) {
        throw std::out_of_range(fmt::format("no primitive polynomial tabulated for degree {}", ell));
    }
    return kPrimitive[ell];
}

std::uint32_t BinaryField::multiply(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) {
        return 0;
    }
    return exp_[(log_[a] + log_[b]) % order()];
}

std::uint32_t BinaryField::element_order(std::uint32_t a) const {
    if (a == 0) {
        throw std::invalid_argument("zero has no multiplicative order");
    }
    std::uint32_t x = a;
    std::uint32_t k = 1;
    while (x != 1) {
        x = multiply(x, a);
        ++k;
    }
    return k;
}

PrimePowerField::PrimePowerField(std::uint32_t p, unsigned r) : p_(p), r_(r), size_(1) {
    if (!is_prime(p) || r < 1) {
        throw std::invalid_argument(fmt::format("GF({}^{}) is not a field", p, r));
    }
    for (unsigned i = 0; i < r; ++i) {
        if (size_ > kMaxSize / p) {
            throw std::invalid_argument(fmt::format("GF({}^{}) exceeds the supported size {}", p, r, kMaxSize));
        }
        size_ *= p;
    }

    auto digits = [&](std::uint32_t v) {
        std::vector<std::uint32_t> d(r, 0);
        for (unsigned i = 0; i < r; ++i) {
            d[i] = v % p;
            v /= p;
        }
        return d;
    };
    auto encode = [&](const std::vector<std::uint32_t>& d) {
        std::uint32_t v = 0;
        for (unsigned i = r; i-- > 0;) {
            v = v * p + d[i];
        }
        return v;
    };

    add_.resize(static_cast<std::size_t>(size_) * size_);
    neg_.resize(size_);
    for (std::uint32_t a = 0; a < size_; ++a) {
        const auto da = digits(a);
        std::vector<std::uint32_t> dn(r);
        for (unsigned i = 0; i < r; ++i) {
            dn[i] = (p - da[i]) % p;
        }
        neg_[a] = encode(dn);
        for (std::uint32_t b = 0; b < size_; ++b) {
            const auto db = digits(b);
            std::vector<std::uint32_t> ds(r);
            for (unsigned i = 0; i < r; ++i) {
                ds[i] = (da[i] + db[i]) % p;
            }
            add_[static_cast<std::size_t>(a) * size_ + b] = encode(ds);
        }
    }

    // Multiply a polynomial by x modulo the monic modulus x^r - (-lower).
    auto times_x = [&](std::uint32_t v, const std::vector<std::uint32_t>& lower) {
        auto d = digits(v);
        const std::uint32_t top = d[r - 1];
        for (unsigned i = r - 1; i > 0; --i) {
            d[i] = d[i - 1];
        }
        d[0] = 0;
        for (unsigned i = 0; i < r; ++i) {
            d[i] = (d[i] + (p - lower[i]) * top) % p;
        }
        return encode(d);
    };

    const std::uint32_t x = r == 1 ? 0 : p; // class of x
    for (std::uint32_t code = 0; code < size_; ++code) {
        const auto lower = digits(code);
        if (lower[0] == 0) {
            continue;
        }
        // In GF(p) (r == 1) we need a primitive root g; the modulus is x - g,
        // so the class of x is g itself.
        const std::uint32_t start = r == 1 ? (p - lower[0]) % p : times_x(1, lower);
        if (r == 1 && start == 0) {
            continue;
        }
        std::vector<std::uint32_t> powers;
        powers.reserve(size_ - 1);
        std::vector<bool> seen(size_, false);
        std::uint32_t v = 1;
        bool primitive = true;
        for (std::uint32_t i = 0; i + 1 < size_; ++i) {
            if (seen[v]) {
                primitive = false;
                break;
            }
            seen[v] = true;
            powers.push_back(v);
            if (r == 1) {
                v = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v) * start) % p);
            } else {
                v = times_x(v, lower);
            }
        }
        if (!primitive || v != 1) {
            continue;
        }
        modulus_code_ = code;
        exp_ = std::move(powers);
        log_.assign(size_, 0);
        for (std::uint32_t i = 0; i < exp_.size(); ++i) {
            log_[exp_[i]] = i;
        }
        (void)x;
        return;
    }
    throw std::logic_error(fmt::format("no primitive polynomial found for GF({}^{})", p, r));
}

std::uint32_t PrimePowerField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) {
        return 0;
    }
    return exp_[(log_[a] + log_[b]) % (size_ - 1)];
}

std::uint32_t PrimePowerField::inverse(std::uint32_t a) const {
    if (a == 0) {
        throw std::domain_error("inverse of zero");
    }
    return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
}

std::uint32_t PrimePowerField::pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) {
        return 1;
    }
    if (a == 0) {
        return 0;
    }
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1)];
}

} // namespace lffz
