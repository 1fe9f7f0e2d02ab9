#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "lffz/bounds.hpp"
#include "lffz/constructions.hpp"
#include "lffz/errors.hpp"
#include "lffz/harness.hpp"

using namespace lffz;

TEST_CASE("simulation is deterministic and independent of the worker count") {
    SimulationConfig cfg;
    cfg.mapping = std::make_shared<HashedMapping>(15, 3, 25, 1);
    cfg.set_sizes = {1, 2, 3, 4, 5, 6};
    cfg.trials = 3000;
    cfg.seed = 11;
    const auto one = simulate(cfg);
    cfg.workers = 4;
    const auto four = simulate(cfg);
    REQUIRE(one.size() == 6);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].set_size == cfg.set_sizes[i]);
        CHECK(one[i].successes == four[i].successes);
        CHECK(one[i].trials == 3000);
    }
    CHECK(one[0].success_rate() == 1.0);
    CHECK(one[5].success_rate() < 1.0);
}

TEST_CASE("decodable matrices succeed on every trial up to d") {
    SimulationConfig cfg;
    cfg.mapping = std::make_shared<MatrixMapping>(ols(25, 3));
    cfg.set_sizes = {1, 2, 3};
    cfg.trials = 2000;
    cfg.seed = 2;
    cfg.workers = 2;
    for (const auto& p : simulate(cfg)) {
        CHECK(p.successes == p.trials);
    }
}

TEST_CASE("simulation rejects set sizes above n") {
    SimulationConfig cfg;
    cfg.mapping = std::make_shared<MatrixMapping>(identity_family(5, 5));
    cfg.set_sizes = {6};
    cfg.trials = 10;
    CHECK_THROWS(simulate(cfg));
}

TEST_CASE("simulation CSV format") {
    std::vector<SimulationPoint> pts{{1, 10, 10}, {2, 9, 10}};
    std::ostringstream out;
    write_simulation_csv(out, pts);
    CHECK(out.str() == "N,success_rate\n1,1\n2,0.9\n");
}

TEST_CASE("bounds CSV header and rows") {
    std::ostringstream out;
    write_bounds_csv(out, {upper_bound_table(25, 3)});
    std::istringstream in(out.str());
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header.rfind("n,d,k,lower,lower_tag,identity,unique,egh,ols,", 0) == 0);
    CHECK(header.find("simplex:bound-only") != std::string::npos);
    CHECK(header.substr(header.size() - 5) == ",best");
    CHECK(row.rfind("25,3,,", 0) == 0);
}

TEST_CASE("set files") {
    std::istringstream in("1 3\n# comment 9\n4   6 # tail\n");
    CHECK(read_set(in) == std::vector<std::size_t>{1, 3, 4, 6});
    std::istringstream dup("2 2");
    CHECK_THROWS_AS(read_set(dup), FormatError);
    std::istringstream zero("0 1");
    CHECK_THROWS_AS(read_set(zero), FormatError);
    std::istringstream junk("1 x");
    CHECK_THROWS_AS(read_set(junk), FormatError);

    const auto path = std::filesystem::temp_directory_path() / "lffz_set_test.txt";
    {
        std::ofstream f(path);
        f << "5\n7\n";
    }
    CHECK(read_set(path) == std::vector<std::size_t>{5, 7});
    std::filesystem::remove(path);
    CHECK_THROWS(read_set(std::filesystem::path("/nonexistent/lffz.txt")));
}

TEST_CASE("reconcile recovers both differences") {
    auto mapping = std::make_shared<MatrixMapping>(recursive_a(200, 4));
    const std::vector<std::size_t> a{1, 5, 9, 50, 120};
    const std::vector<std::size_t> b{5, 9, 77, 120, 199};
    const auto out = reconcile(mapping, a, b);
    REQUIRE(out.ok());
    CHECK(out.positive == std::vector<std::size_t>{1, 50});
    CHECK(out.negative == std::vector<std::size_t>{77, 199});
    const auto same = reconcile(mapping, a, a);
    CHECK(same.ok());
    CHECK(same.positive.empty());
    CHECK(same.negative.empty());
}
