#include <doctest.h>

#include <sstream>
#include <vector>

#include "lffz/constructions.hpp"
#include "lffz/errors.hpp"
#include "lffz/matrix.hpp"
#include "support.hpp"

using namespace lffz;

TEST_CASE("column returns the i-th column") {
    const auto m = test::example_matrix();
    CHECK(m.rows() == 5);
    CHECK(m.cols() == 6);
    CHECK(m.column(4) == std::vector<std::uint8_t>{0, 1, 1, 0, 0});
    CHECK(identity_family(3, 3).column(2) == std::vector<std::uint8_t>{0, 1, 0});
}

TEST_CASE("column index out of range throws") {
    const auto m = test::example_matrix();
    CHECK_THROWS_AS(m.column(0), std::out_of_range);
    CHECK_THROWS_AS(m.column(7), std::out_of_range);
    CHECK_THROWS_AS(egh(381, 3).column(382), std::out_of_range);
}

TEST_CASE("generated columns agree with their dense materialization") {
    const auto g = egh(381, 3);
    CHECK_FALSE(g.is_dense());
    const auto d = g.materialize();
    CHECK(d.is_dense());
    CHECK(d == g);
    for (std::size_t i = 1; i <= g.cols(); ++i) {
        REQUIRE(g.column(i) == d.column(i));
    }
}

TEST_CASE("materialize is idempotent on dense input and respects the budget") {
    const auto m = test::example_matrix();
    CHECK(m.materialize() == m);
    CHECK(recursive_b(7).materialize().rows() == 4);
    const auto o = ols(25, 3).materialize();
    CHECK(o.rows() == 15);
    CHECK(o.cols() == 25);
    CHECK_THROWS_AS(ols(25, 3).materialize(100), BudgetExceeded);
}

TEST_CASE("counter arrays are column sums") {
    const auto m = test::example_matrix();
    const std::vector<std::size_t> s1{1, 3, 4};
    CHECK(counter_array(m, s1) == CounterArray{2, 1, 2, 0, 1});
    const std::vector<std::size_t> s2{1, 3, 4, 6};
    CHECK(counter_array(m, s2) == CounterArray{2, 2, 2, 0, 2});
    CHECK(counter_array(m, std::vector<std::size_t>{}) == CounterArray{0, 0, 0, 0, 0});
}

TEST_CASE("adding an element adds its column to the counter array") {
    const auto m = recursive_a(40, 4);
    std::vector<std::size_t> s{2, 9, 17};
    const auto before = counter_array(m, s);
    s.push_back(31);
    const auto after = counter_array(m, s);
    const auto col = m.column(31);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        CHECK(after[r] - before[r] == col[r]);
    }
}

TEST_CASE("dense and sparse files round-trip bit-exactly") {
    for (const auto format : {MatrixFormat::Dense, MatrixFormat::Sparse}) {
        for (const auto& m : {test::example_matrix(), steiner_triple(12), recursive_c(25, 3, 3)}) {
            std::stringstream io;
            write_matrix(m, io, format);
            const auto back = read_matrix(io);
            CHECK(back == m);
            CHECK(back.is_dense());
        }
    }
}

TEST_CASE("sparse STS(9) file equals the generated Bose matrix") {
    std::stringstream io;
    io << "IBLTMATRIX v1 9 12 sparse\n";
    for (const auto& block : bose_triples(1)) {
        io << block[0] + 1 << ' ' << block[1] + 1 << ' ' << block[2] + 1 << '\n';
    }
    io << "# hand-written\n";
    CHECK(read_matrix(io) == steiner_triple(12));
}

TEST_CASE("writer echoes the spec as a trailing comment") {
    std::stringstream io;
    write_matrix(ols(25, 3), io);
    const std::string text = io.str();
    CHECK(text.find("# kind=ols n=25 d=3 k=3 q=5") != std::string::npos);
}

TEST_CASE("malformed matrix files are rejected") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_matrix(in);
    };
    CHECK_THROWS_AS(parse(""), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v2 2 2 dense\n10\n01\n"), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v1 2 2 dense\n10\n0\n"), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v1 2 2 dense\n10\n00\n"), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v1 2 2 dense\n10\n"), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v1 2 2 sparse\n1\n2 1\n"), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v1 2 2 sparse\n1\n3\n"), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v1 2 2 sparse\n1\n\n"), FormatError);
    CHECK_THROWS_AS(parse("IBLTMATRIX v1 2 2 fancy\n1\n2\n"), FormatError);
    CHECK_NOTHROW(parse("IBLTMATRIX v1 2 2 dense\n11\n01\n# note\n"));
}

TEST_CASE("duplicate columns are accepted by storage") {
    const auto m = MappingMatrix::from_rows({"110", "001"});
    CHECK(m.column(1) == m.column(2));
}

TEST_CASE("dense factories reject zero columns") {
    CHECK_THROWS_AS(MappingMatrix::from_rows({"10", "10"}), FormatError);
    const std::vector<Support> cols{{0}, {}};
    CHECK_THROWS_AS(MappingMatrix::from_columns(2, cols), FormatError);
}

TEST_CASE("construction kinds round-trip through their names") {
    for (int i = 0; i <= static_cast<int>(ConstructionKind::CoveringArrayRandom); ++i) {
        const auto kind = static_cast<ConstructionKind>(i);
        CHECK(parse_kind(kind_name(kind)) == kind);
    }
    CHECK_FALSE(parse_kind("nope").has_value());
}
