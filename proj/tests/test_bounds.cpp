#include <doctest.h>

#include <cmath>

#include "lffz/bounds.hpp"
#include "lffz/constructions.hpp"
#include "lffz/numeric.hpp"

using namespace lffz;

TEST_CASE("Turan covering numbers") {
    CHECK(turan_K(2) == 0);
    CHECK(turan_K(4) == 2);
    CHECK(turan_K(5) == 4);
    CHECK(turan_K(10) == 20);
}

TEST_CASE("exact (3,2) law") {
    CHECK(exact_m_32(25) == 10);
    CHECK(exact_m_32(4) == 4);
    CHECK(exact_m_32(1) == 2);
    for (std::size_t n = 1; n <= 10000; ++n) {
        REQUIRE(exact_m_32(n) == static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(double(n)) - 1e-12)));
    }
}

TEST_CASE("lower bound special cases") {
    const auto p = lower_bound(6, 4);
    CHECK(p.value == 5);
    CHECK(p.exact);
    CHECK(p.tag == "plotkin");
    CHECK(lower_bound(25, 1).value == 1);
    CHECK(lower_bound(25, 2).value == 5);
    CHECK(lower_bound(7, 7).value == 7);
    CHECK_THROWS_AS(lower_bound(5, 6), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound(5, 0), std::invalid_argument);
}

TEST_CASE("sphere packing term uses exact binomial sums") {
    // radius 2: 1 + 381 + C(381,2) = 72772 -> 17 bits.
    const auto lb = lower_bound(381, 5);
    CHECK(lb.value == 17);
    CHECK(lb.tag == "sphere-packing");
    BigInt v = 1 + 381 + binomial(381, 2);
    CHECK(ceil_log2(v) == 17);
}

TEST_CASE("Plotkin regime equals the identity family") {
    for (std::size_t d = 3; d <= 20; ++d) {
        for (std::size_t n = d + 1; 2 * n < 3 * (d + 1); ++n) {
            const auto lb = lower_bound(n, d);
            CHECK(lb.value == n - 1);
            CHECK(identity_family(n, d).rows() == n - 1);
        }
    }
}

TEST_CASE("lower bounds with fixed weight") {
    const auto e = lower_bound_k(25, 3, 2);
    CHECK(e.value == 10);
    CHECK(e.exact);
    CHECK(lower_bound_k(17, 3, 1).value == 17);
    CHECK(lower_bound_k(17, 5, 1).value == 17);
    CHECK(lower_bound_k(6, 2, 2).value == 4);
    // n=100, d=4, k=3: sphere packing gives ceil(log2(1+100+4950)) = 13,
    // above the k=d-1 counting bound (8) and the closed form.
    const auto k3 = lower_bound_k(100, 4, 3);
    CHECK(k3.value == 13);
    CHECK(k3.tag == "sphere-packing");
    const double closed = 3.0 / std::exp(1.0) * std::cbrt(400.0 / 3.0);
    CHECK(k3.value >= static_cast<std::size_t>(std::ceil(closed)));
    // Where it binds: n=1000, d=3, k=2 is exact; n=2000, d=5, k=4 uses C(m,4)*4 >= 5n.
    const auto k4 = lower_bound_k(2000, 5, 4);
    std::size_t m = 4;
    while (binomial(m, 4) * 4 < BigInt(2000) * 5) {
        ++m;
    }
    CHECK(k4.value >= m);
}

TEST_CASE("lower bound is monotone in d") {
    for (std::size_t n : {10U, 25U, 100U, 381U, 5000U}) {
        std::size_t prev = 0;
        for (std::size_t d = 1; d <= std::min<std::size_t>(n, 40); ++d) {
            const auto v = lower_bound(n, d).value;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("upper bound table") {
    const auto row = upper_bound_table(25, 3, 3);
    CHECK(row.find("ols")->rows == 15);
    CHECK(row.find("recursive-c")->rows == recursive_c(25, 3, 3).rows());
    CHECK(row.find("steiner-triple")->rows == 15);
    REQUIRE(row.best.has_value());
    CHECK(row.lower.value <= *row.best_rows());

    const auto big = upper_bound_table(65536, 3);
    CHECK(big.find("recursive-b")->rows <= 31);
    CHECK(recursive_a_rows(65536, 3, 2) == 31);
    CHECK(big.find("simplex")->formula_only);
    CHECK(big.find("ls-ldpc")->formula_only);
}

TEST_CASE("formula-only entries") {
    const auto s = upper_bound_table(15, 3);
    CHECK(s.find("simplex")->rows == 11);
    CHECK(upper_bound_table(25, 5).find("ls-ldpc")->rows == 15);
    CHECK_FALSE(upper_bound_table(25, 6).find("ls-ldpc")->rows.has_value());
}

TEST_CASE("lower bound never exceeds the best entry") {
    for (std::size_t d : {1U, 2U, 3U, 4U, 5U, 7U, 15U}) {
        for (std::size_t n : {16U, 25U, 100U, 381U, 1000U, 65536U}) {
            if (d > n) {
                continue;
            }
            const auto row = upper_bound_table(n, d);
            REQUIRE(row.best.has_value());
            CHECK(row.lower.value <= *row.best_rows());
            for (std::size_t k : {2U, 3U, 4U, 5U}) {
                const auto rk = upper_bound_table(n, d, k);
                if (rk.best) {
                    CHECK(rk.lower.value <= *rk.best_rows());
                }
            }
        }
    }
}
