#include <doctest.h>

#include <vector>

#include "lffz/constructions.hpp"
#include "lffz/errors.hpp"
#include "lffz/oracle.hpp"
#include "lffz/random.hpp"
#include "support.hpp"

using namespace lffz;

using Cols = std::vector<std::size_t>;

TEST_CASE("stopping distance of the worked example is 4") {
    const auto r = stopping_distance(test::example_matrix(), 4);
    CHECK(r.mode == SearchMode::Exhaustive);
    CHECK(r.distance == 4);
    REQUIRE(r.witness.has_value());
    // Three stopping sets of size 4 tie; the lexicographically smallest wins.
    CHECK(*r.witness == Cols{1, 2, 4, 5});
    CHECK(is_stopping_set(test::example_matrix(), Cols{1, 3, 4, 6}));
    CHECK(r.checked_bound == 4);
}

TEST_CASE("identity matrix has no stopping set") {
    const auto r = stopping_distance(identity_family(5, 5), 5);
    CHECK(r.is_sentinel());
    CHECK(r.distance == 6);
}

TEST_CASE("two identical columns form a stopping set of size two") {
    const auto m = MappingMatrix::from_rows({"1100", "0010", "1101"});
    const auto r = stopping_distance(m, 4);
    CHECK(r.distance == 2);
    CHECK(*r.witness == Cols{1, 2});
}

TEST_CASE("stopping_distance preconditions") {
    const auto m = test::example_matrix();
    CHECK_THROWS_AS(stopping_distance(m, 0), std::invalid_argument);
    CHECK_THROWS_AS(stopping_distance(m, 7), std::invalid_argument);
    CHECK_THROWS_AS(stopping_distance(ols(400, 3), 5, 1000), BudgetExceeded);
}

TEST_CASE("d-decodability of the worked example") {
    const auto m = test::example_matrix();
    CHECK(is_d_decodable(m, 3).decodable);
    const auto v = is_d_decodable(m, 4);
    CHECK_FALSE(v.decodable);
    CHECK(*v.witness == Cols{1, 2, 4, 5});
    CHECK(is_d_decodable(m, 0).decodable);
}

TEST_CASE("identity plus an all-ones column is (n-1)-decodable") {
    for (std::size_t n = 2; n <= 9; ++n) {
        const auto m = identity_family(n, n - 1);
        CHECK(m.rows() == n - 1);
        CHECK(is_d_decodable(m, n - 1).decodable);
        CHECK_FALSE(is_d_decodable(m, n).decodable);
    }
}

TEST_CASE("bitset search agrees with the naive checker on random matrices") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 2 + rng.below(7);
        const std::size_t n = 2 + rng.below(9);
        std::vector<Support> cols(n);
        for (auto& c : cols) {
            for (std::uint32_t r = 0; r < m; ++r) {
                if (rng.below(3) == 0) {
                    c.push_back(r);
                }
            }
            if (c.empty()) {
                c.push_back(static_cast<std::uint32_t>(rng.below(m)));
            }
        }
        const auto mat = MappingMatrix::from_columns(m, cols);
        const auto expected = test::naive_smallest_stopping(mat, n);
        const auto got = stopping_distance(mat, n);
        if (expected) {
            REQUIRE(got.witness.has_value());
            CHECK(*got.witness == *expected);
            CHECK(got.distance == expected->size());
        } else {
            CHECK(got.is_sentinel());
            CHECK(got.distance == n + 1);
        }
        for (std::size_t d = 1; d <= n; ++d) {
            const bool dec = is_d_decodable(mat, d).decodable;
            CHECK(dec == (!expected || expected->size() > d));
        }
    }
}

TEST_CASE("wide matrices use the multi-word search paths") {
    for (const std::size_t m : {70U, 130U, 260U, 600U, 1100U, 2000U}) {
        std::vector<Support> cols;
        for (std::uint32_t r = 0; r < m; ++r) {
            cols.push_back({r});
        }
        cols.push_back({0, static_cast<std::uint32_t>(m - 1)});
        cols.push_back({0, static_cast<std::uint32_t>(m - 1)});
        const auto mat = MappingMatrix::from_columns(m, cols);
        const auto r = stopping_distance(mat, 2);
        CHECK(r.distance == 2);
        CHECK(*r.witness == Cols{m + 1, m + 2});
    }
}

TEST_CASE("sampled check finds a planted duplicate and is deterministic") {
    const auto base = ols(49, 3).materialize();
    std::vector<Support> cols;
    for (std::size_t i = 1; i <= base.cols(); ++i) {
        cols.push_back(base.support(i));
    }
    cols.push_back(cols[10]);
    const auto planted = MappingMatrix::from_columns(base.rows(), cols);
    const auto a = is_d_decodable_sampled(planted, 2, 20000, 3);
    CHECK(a.counterexample_found);
    REQUIRE(a.witness.has_value());
    CHECK(*a.witness == Cols{11, 50});
    CHECK(is_stopping_set(planted, *a.witness));
    const auto b = is_d_decodable_sampled(planted, 2, 20000, 3);
    CHECK(a.witness == b.witness);
    CHECK(b.note().find("counterexample found") != std::string::npos);

    const auto clean = is_d_decodable_sampled(base, 3, 20000, 3);
    CHECK_FALSE(clean.counterexample_found);
    CHECK(clean.note() == "no counterexample in 20000 trials (seed 3)");
    CHECK_THROWS_AS(is_d_decodable_sampled(base, 3, 0, 3), std::invalid_argument);
}

TEST_CASE("FPF check") {
    const auto m = test::example_matrix();
    CHECK_FALSE(is_d_fpf(m, 2));
    CHECK(is_d_fpf(ols(25, 3), 2));
    CHECK(is_d_fpf(identity_family(6, 6), 5));
}

TEST_CASE("FPF implies decodability one level up") {
    for (std::size_t n : {8U, 16U, 30U}) {
        const auto m = egh_fpf(n, 2);
        CHECK(is_d_fpf(m, 2));
        CHECK(is_d_decodable(m, 3).decodable);
    }
}

TEST_CASE("covering strength") {
    // All 8 patterns over 3 columns.
    const auto full = MappingMatrix::from_rows({"000", "001", "010", "011", "100", "101", "110", "111"});
    CHECK(covering_strength_at_least(full, 3));
    CHECK(is_d_decodable(full, 3).decodable);
    CHECK_FALSE(covering_strength_at_least(test::example_matrix(), 2));
    CHECK_FALSE(covering_strength_at_least(test::example_matrix(), 3));
}

TEST_CASE("covering arrays are decodable at their strength") {
    const auto m = covering_array_random(10, 2, 5);
    if (covering_strength_at_least(m, 2)) {
        CHECK(is_d_decodable(m, 2).decodable);
    }
    const auto u = unique_columns(7);
    CHECK(is_d_decodable(u, 2).decodable);
}

TEST_CASE("decodability is monotone in d") {
    const auto m = recursive_a(30, 4);
    for (std::size_t d = 1; d <= 6; ++d) {
        if (is_d_decodable(m, d).decodable) {
            CHECK(is_d_decodable(m, d - 1).decodable);
        }
    }
}
