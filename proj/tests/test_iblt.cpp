#include <doctest.h>

#include <algorithm>
#include <memory>
#include <vector>

#include "lffz/constructions.hpp"
#include "lffz/errors.hpp"
#include "lffz/iblt.hpp"
#include "lffz/oracle.hpp"
#include "lffz/random.hpp"
#include "support.hpp"

using namespace lffz;

using Elems = std::vector<std::size_t>;

namespace {

std::shared_ptr<const CellMapping> example_mapping() {
    return std::make_shared<MatrixMapping>(test::example_matrix());
}

} // namespace

TEST_CASE("insert fills the counter array") {
    Iblt t(example_mapping());
    for (auto u : {1, 3, 4}) {
        t.insert(u);
    }
    CHECK(t.counts() == CounterArray{2, 1, 2, 0, 1});
    t.erase(4);
    CHECK(t.counts() == CounterArray{2, 0, 1, 0, 1});
}

TEST_CASE("insert then erase restores the empty table") {
    Iblt t(example_mapping());
    t.insert(5);
    t.insert(2);
    t.erase(5);
    t.erase(2);
    CHECK(t.is_empty());
}

TEST_CASE("double insert in plain mode cancels the key sum") {
    Iblt t(example_mapping());
    t.insert(2);
    t.insert(2);
    CHECK(t.counts() == CounterArray{2, 0, 0, 2, 0});
    for (const auto& c : t.cells()) {
        CHECK(c.key_sum == 0);
    }
}

TEST_CASE("erase from an empty table goes negative") {
    Iblt t(example_mapping(), IbltMode::Signed);
    t.erase(1);
    CHECK(t.counts() == CounterArray{-1, 0, -1, 0, 0});
    Iblt p(example_mapping());
    CHECK_NOTHROW(p.erase(1));
}

TEST_CASE("keys out of range are rejected") {
    Iblt t(example_mapping());
    CHECK_THROWS_AS(t.insert(0), std::out_of_range);
    CHECK_THROWS_AS(t.insert(7), std::out_of_range);
    CHECK_THROWS_AS(t.erase(7), std::out_of_range);
}

TEST_CASE("key encoding") {
    for (std::size_t u : {1U, 2U, 77U, 4000000000U}) {
        CHECK(Iblt::decode(Iblt::encode(u)) == u);
        CHECK(Iblt::encode(u) != 0);
    }
    CHECK(Iblt::decode(0) == 0);
    CHECK(Iblt::decode(Iblt::encode(3) ^ Iblt::encode(5)) == 0);
}

TEST_CASE("listing the worked example") {
    Iblt t(example_mapping());
    for (auto u : {1, 3, 4}) {
        t.insert(u);
    }
    const auto out = t.list();
    CHECK(out.ok());
    CHECK(out.positive == Elems{1, 3, 4});
    CHECK(out.negative.empty());
    // Listing works on a copy.
    CHECK(t.counts() == CounterArray{2, 1, 2, 0, 1});

    // The only pure cell at the start is row 2, which holds element 4.
    const auto& c = t.cells()[1];
    CHECK(c.count == 1);
    CHECK(Iblt::decode(c.key_sum) == 4);
}

TEST_CASE("a stopping set fails to list") {
    Iblt t(example_mapping());
    for (auto u : {1, 3, 4, 6}) {
        t.insert(u);
    }
    const auto out = t.list();
    CHECK_FALSE(out.ok());
    CHECK(out.residual_counts() == CounterArray{2, 2, 2, 0, 2});
}

TEST_CASE("listed elements reinsert to the same state") {
    const auto m = recursive_a(60, 4);
    auto mapping = std::make_shared<MatrixMapping>(m);
    Iblt t(mapping);
    for (auto u : {3, 17, 44, 59}) {
        t.insert(u);
    }
    const auto out = t.list();
    REQUIRE(out.ok());
    Iblt again(mapping);
    for (auto u : out.positive) {
        again.insert(u);
    }
    CHECK(again.cells() == t.cells());
}

TEST_CASE("subtract gives the signed symmetric difference") {
    auto mapping = example_mapping();
    Iblt a(mapping);
    Iblt b(mapping);
    a.insert(1);
    a.insert(3);
    b.insert(3);
    b.insert(4);
    const auto diff = a.subtract(b);
    CHECK(diff.mode() == IbltMode::Signed);
    const auto out = diff.list();
    CHECK(out.ok());
    CHECK(out.positive == Elems{1});
    CHECK(out.negative == Elems{4});
    CHECK(a.subtract(a).is_empty());
}

TEST_CASE("subtract rejects different mappings") {
    Iblt a(example_mapping());
    Iblt b(std::make_shared<MatrixMapping>(identity_family(6, 6)));
    CHECK_THROWS_AS(a.subtract(b), MappingMismatch);
    Iblt c(std::make_shared<HashedMapping>(5, 1, 6, 1));
    CHECK_THROWS_AS(a.subtract(c), MappingMismatch);
    // Equal matrices built separately are compatible.
    Iblt d(example_mapping());
    CHECK_NOTHROW(a.subtract(d));
}

TEST_CASE("hashed mapping layout") {
    HashedMapping h(15, 3, 25, 9);
    CHECK(h.sub_table_width() == 5);
    CHECK(h.unused_cells() == 0);
    Support s;
    for (std::size_t u = 1; u <= 25; ++u) {
        h.cells_of(u, s);
        REQUIRE(s.size() == 3);
        CHECK(s[0] < 5);
        CHECK((s[1] >= 5 && s[1] < 10));
        CHECK((s[2] >= 10 && s[2] < 15));
    }
    CHECK(HashedMapping(17, 3, 25, 9).unused_cells() == 2);
    CHECK_THROWS_AS(HashedMapping(2, 3, 25, 9), std::invalid_argument);

    HashedMapping h2(15, 3, 25, 9);
    Support s2;
    for (std::size_t u = 1; u <= 25; ++u) {
        h.cells_of(u, s);
        h2.cells_of(u, s2);
        CHECK(s == s2);
    }
}

TEST_CASE("two elements on the same cells fail to list") {
    // Find two keys with identical cell triples under a tiny table.
    auto h = std::make_shared<HashedMapping>(6, 3, 200, 4);
    Support a;
    Support b;
    std::size_t x = 0;
    std::size_t y = 0;
    for (std::size_t u = 1; u <= 200 && x == 0; ++u) {
        h->cells_of(u, a);
        for (std::size_t v = u + 1; v <= 200; ++v) {
            h->cells_of(v, b);
            if (a == b) {
                x = u;
                y = v;
                break;
            }
        }
    }
    REQUIRE(x != 0);
    Iblt t(h);
    t.insert(x);
    t.insert(y);
    CHECK_FALSE(t.list().ok());
}

TEST_CASE("decodable matrices list every small set") {
    const auto m = ols(25, 3);
    auto mapping = std::make_shared<MatrixMapping>(m);
    for (std::size_t s = 1; s <= 3; ++s) {
        test::for_each_subset(25, s, [&](const std::vector<std::size_t>& subset) {
            Iblt t(mapping);
            for (auto u : subset) {
                t.insert(u);
            }
            const auto out = t.list();
            REQUIRE(out.ok());
            REQUIRE(out.positive == subset);
            return false;
        });
    }
}

TEST_CASE("peel order does not change the verdict") {
    const auto m = recursive_a(40, 3);
    auto mapping = std::make_shared<MatrixMapping>(m);
    Rng rng(77);
    std::vector<std::size_t> scratch;
    std::vector<std::size_t> subset;
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t size = 1 + rng.below(8);
        sample_subset(rng, 40, size, scratch, subset);
        Iblt t(mapping);
        for (auto u : subset) {
            t.insert(u);
        }
        const auto first = t.list(PeelPolicy::first_index());
        const auto random = t.list(PeelPolicy::random(static_cast<std::uint64_t>(trial)));
        REQUIRE(first.ok() == random.ok());
        REQUIRE(first.positive == random.positive);
        REQUIRE(first.residual == random.residual);
    }
}

TEST_CASE("insert and erase commute") {
    auto mapping = std::make_shared<MatrixMapping>(egh(50, 3));
    Iblt t(mapping, IbltMode::Signed);
    for (auto u : {5, 9, 5, 30, 9, 12}) {
        t.insert(u);
    }
    for (auto u : {9, 12, 5, 9, 30, 5}) {
        t.erase(u);
    }
    CHECK(t.is_empty());
}

TEST_CASE("out-of-zone plain listing reports failure instead of garbage") {
    // Every column equal: three elements give counts 3 everywhere, no peel.
    const auto m = MappingMatrix::from_rows({"111", "111"});
    Iblt t(std::make_shared<MatrixMapping>(m));
    t.insert(1);
    t.insert(2);
    t.insert(3);
    CHECK_FALSE(t.list().ok());
}

TEST_CASE("signed difference within the zone always lists") {
    const auto m = recursive_a(100, 4);
    auto mapping = std::make_shared<MatrixMapping>(m);
    Rng rng(5);
    std::vector<std::size_t> scratch;
    std::vector<std::size_t> pick;
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t size = 1 + rng.below(4);
        sample_subset(rng, 100, size, scratch, pick);
        Iblt a(mapping);
        Iblt b(mapping);
        Elems pos;
        Elems neg;
        for (auto u : pick) {
            if (rng.below(2) == 0) {
                a.insert(u);
                pos.push_back(u);
            } else {
                b.insert(u);
                neg.push_back(u);
            }
        }
        std::sort(pos.begin(), pos.end());
        std::sort(neg.begin(), neg.end());
        const auto out = a.subtract(b).list();
        REQUIRE(out.ok());
        REQUIRE(out.positive == pos);
        REQUIRE(out.negative == neg);
    }
}
