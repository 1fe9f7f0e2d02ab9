// Command-line front end. Exit codes: 0 ok, 1 verification or listing
// failure, 2 usage or precondition error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "lffz/bounds.hpp"
#include "lffz/constructions.hpp"
#include "lffz/errors.hpp"
#include "lffz/harness.hpp"
#include "lffz/iblt.hpp"
#include "lffz/matrix.hpp"
#include "lffz/oracle.hpp"

using namespace lffz;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string matrix_path;
    std::string construction;
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<std::size_t> k;
    std::optional<std::uint64_t> q;
    std::optional<unsigned> ell;
    std::optional<std::size_t> split;
    std::optional<std::size_t> fpf;
    std::uint64_t seed = 0;
    std::uint64_t retries = 64;
};

void add_source(CLI::App* app, Source& src) {
    app->add_option("--matrix", src.matrix_path, "Matrix file (IBLTMATRIX v1)");
    app->add_option("--construction", src.construction, "Construction name, e.g. ols, recursive-a, egh");
    app->add_option("--n", src.n, "Universe size");
    app->add_option("--d", src.d, "Listing threshold d");
    app->add_option("--k", src.k, "Column weight (fixed-weight constructions)");
    app->add_option("--q", src.q, "Field or prime parameter q");
    app->add_option("--ell", src.ell, "Field exponent for bch");
    app->add_option("--split", src.split, "Force the split factor of recursive-a");
    app->add_option("--fpf", src.fpf, "EGH: build an fpf-FPF matrix instead of deriving it from d");
    app->add_option("--seed", src.seed, "Seed for randomized steps");
    app->add_option("--retries", src.retries, "covering-random: maximum attempts");
}

MappingMatrix resolve(const Source& src) {
    if (!src.matrix_path.empty()) {
        if (!src.construction.empty()) {
            throw UsageError("give either --matrix or --construction, not both");
        }
        return read_matrix(std::filesystem::path(src.matrix_path));
    }
    if (src.construction.empty()) {
        throw UsageError("a matrix source is required: --matrix PATH or --construction NAME");
    }
    const auto kind = parse_kind(src.construction);
    if (!kind) {
        throw UsageError(fmt::format("unknown construction '{}'", src.construction));
    }
    ConstructionSpec spec;
    spec.kind = *kind;
    spec.n = src.n;
    spec.d = src.d;
    spec.k = src.k;
    if (src.q) {
        spec.extras["q"] = *src.q;
    }
    if (src.ell) {
        spec.extras["ell"] = *src.ell;
    }
    if (src.split) {
        spec.extras["split"] = *src.split;
    }
    if (src.fpf) {
        spec.extras["fpf"] = *src.fpf;
    }
    if (*kind == ConstructionKind::CoveringArrayRandom) {
        spec.extras["seed"] = src.seed;
        spec.extras["retries"] = src.retries;
    }
    const bool needs_n = *kind != ConstructionKind::InversivePlane && *kind != ConstructionKind::ArrayCode &&
                         *kind != ConstructionKind::BchComplement;
    if (needs_n && spec.n == 0) {
        throw UsageError(fmt::format("{} needs --n", src.construction));
    }
    const bool needs_d = *kind == ConstructionKind::Identity || *kind == ConstructionKind::IdentityPlusOnes ||
                         *kind == ConstructionKind::OLS || *kind == ConstructionKind::RecursiveA ||
                         *kind == ConstructionKind::RecursiveC || *kind == ConstructionKind::CoveringArrayRandom ||
                         (*kind == ConstructionKind::EGH && !src.fpf);
    if (needs_d && spec.d == 0) {
        throw UsageError(fmt::format("{} needs --d", src.construction));
    }
    return build(spec);
}

std::string join(const std::vector<std::size_t>& v) { return fmt::format("{{{}}}", fmt::join(v, ",")); }

void describe(std::ostream& err, const MappingMatrix& m) {
    err << fmt::format("matrix m={} n={}", m.rows(), m.cols());
    if (const auto& spec = m.spec()) {
        err << fmt::format(" decodable-d={}", spec->d);
        if (auto it = spec->extras.find("fpf"); it != spec->extras.end()) {
            err << fmt::format(" fpf-d={}", it->second);
        }
        err << " [" << spec->describe() << "]";
    }
    err << '\n';
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) {
                throw UsageError(fmt::format("cannot write {}", path));
            }
            stream = &file;
        }
    }
};

std::vector<std::size_t> parse_range(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoull(part));
            } else {
                const std::size_t a = std::stoull(part.substr(0, dash));
                const std::size_t b = std::stoull(part.substr(dash + 1));
                for (std::size_t v = a; v <= b; ++v) {
                    out.push_back(v);
                }
            }
        } catch (const std::exception&) {
            throw UsageError(fmt::format("bad list item '{}'", part));
        }
    }
    return out;
}

int cmd_gen(const Source& src, const std::string& out_path, const std::string& format) {
    const MappingMatrix m = resolve(src);
    OutputTarget out(out_path);
    write_matrix(m, *out.stream, format == "sparse" ? MatrixFormat::Sparse : MatrixFormat::Dense);
    describe(std::cerr, m);
    return kExitOk;
}

int cmd_verify(const Source& src, std::size_t d, std::optional<std::uint64_t> samples, std::uint64_t sample_seed,
               std::uint64_t budget) {
    const MappingMatrix m = resolve(src);
    describe(std::cout, m);
    if (d < 1 || d > m.cols()) {
        throw UsageError(fmt::format("--d must be in 1..{}", m.cols()));
    }
    if (samples) {
        const auto v = is_d_decodable_sampled(m, d, *samples, sample_seed);
        std::cout << v.note() << '\n';
        std::cout << fmt::format("RESULT mode=sampled d={} trials={} seed={} decodable={}{}\n", d, v.trials, v.seed,
                                 v.counterexample_found ? "false" : "no-counterexample",
                                 v.witness ? " witness=" + join(*v.witness) : "");
        return v.counterexample_found ? kExitFail : kExitOk;
    }
    const auto v = is_d_decodable(m, d, budget);
    if (v.decodable) {
        std::cout << fmt::format("no stopping set of size <= {}\n", d);
    } else {
        std::cout << fmt::format("stopping set {} of size {}\n", join(*v.witness), v.witness->size());
    }
    std::cout << fmt::format("RESULT mode=exhaustive d={} decodable={}{}\n", d, v.decodable ? "true" : "false",
                             v.witness ? " witness=" + join(*v.witness) : "");
    return v.decodable ? kExitOk : kExitFail;
}

int cmd_stopping_distance(const Source& src, std::size_t max_d, std::uint64_t budget) {
    const MappingMatrix m = resolve(src);
    describe(std::cout, m);
    const std::size_t bound = max_d == 0 ? m.cols() : max_d;
    const auto r = stopping_distance(m, bound, budget);
    if (r.is_sentinel()) {
        std::cout << fmt::format("RESULT distance=sentinel({}) checked_bound={}\n", r.distance, r.checked_bound);
    } else {
        std::cout << fmt::format("RESULT distance={} witness={} checked_bound={}\n", r.distance, join(*r.witness),
                                 r.checked_bound);
    }
    return kExitOk;
}

int cmd_simulate(const Source& src, bool baseline, std::size_t m, std::uint64_t hash_seed, const std::string& sizes,
                 std::uint64_t trials, std::uint64_t seed, unsigned workers, const std::string& csv) {
    SimulationConfig cfg;
    if (baseline) {
        if (!src.k || m == 0 || src.n == 0) {
            throw UsageError("--baseline needs --m, --k and --n");
        }
        cfg.mapping = std::make_shared<HashedMapping>(m, *src.k, src.n, hash_seed);
    } else {
        cfg.mapping = std::make_shared<MatrixMapping>(resolve(src));
    }
    cfg.set_sizes = parse_range(sizes);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.workers = workers;
    const auto points = simulate(cfg);
    OutputTarget out(csv);
    write_simulation_csv(*out.stream, points);
    return kExitOk;
}

std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t points) {
    std::set<std::size_t> grid;
    if (points <= 1 || lo == hi) {
        grid.insert(lo);
    } else {
        for (std::size_t i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(points - 1);
            grid.insert(static_cast<std::size_t>(
                std::llround(static_cast<double>(lo) * std::pow(static_cast<double>(hi) / lo, t))));
        }
    }
    return {grid.begin(), grid.end()};
}

int cmd_bounds(const std::string& n_list, std::size_t n_min, std::size_t n_max, std::size_t points,
               const std::string& d_list, std::optional<std::size_t> k, const std::string& csv) {
    const std::vector<std::size_t> ns = n_list.empty() ? log_grid(n_min, n_max, points) : parse_range(n_list);
    const std::vector<std::size_t> ds = parse_range(d_list);
    std::vector<BoundsRow> rows;
    for (const auto d : ds) {
        for (const auto n : ns) {
            if (d < 1 || d > n) {
                continue;
            }
            rows.push_back(upper_bound_table(n, d, k));
        }
    }
    OutputTarget out(csv);
    write_bounds_csv(*out.stream, rows);
    return kExitOk;
}

int cmd_reconcile(const Source& src, const std::string& set_a, const std::string& set_b) {
    const MappingMatrix m = resolve(src);
    auto mapping = std::make_shared<MatrixMapping>(m);
    const auto a = read_set(std::filesystem::path(set_a));
    const auto b = read_set(std::filesystem::path(set_b));
    const auto outcome = reconcile(mapping, a, b);
    std::cout << fmt::format("|A|={} |B|={}\n", a.size(), b.size());
    std::cout << fmt::format("only in A (+): {}\n", join(outcome.positive));
    std::cout << fmt::format("only in B (-): {}\n", join(outcome.negative));
    if (outcome.ok()) {
        std::cout << "RESULT listing=success\n";
        return kExitOk;
    }
    std::cout << fmt::format("RESULT listing=failure residual_counts=({})\n",
                             fmt::join(outcome.residual_counts(), ","));
    return kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IBLT mapping matrices with a listing-failure-free zone"};
    app.require_subcommand(1);

    Source gen_src;
    std::string gen_out;
    std::string gen_format = "dense";
    auto* gen = app.add_subcommand("gen", "Build a matrix and write it in IBLTMATRIX format");
    add_source(gen, gen_src);
    gen->add_option("--out", gen_out, "Output path (default stdout)");
    gen->add_option("--format", gen_format, "dense or sparse")->check(CLI::IsMember({"dense", "sparse"}));

    Source ver_src;
    std::optional<std::uint64_t> samples;
    std::uint64_t sample_seed = 0;
    std::uint64_t budget = kDefaultSubsetBudget;
    auto* verify = app.add_subcommand("verify", "Check d-decodability (exit 0 iff decodable)");
    add_source(verify, ver_src);
    verify->add_option("--samples", samples, "Sample this many subsets instead of enumerating");
    verify->add_option("--sample-seed", sample_seed, "Seed for --samples (defaults to --seed)");
    verify->add_option("--budget", budget, "Maximum subsets for exhaustive search");

    Source sd_src;
    std::size_t max_d = 0;
    std::uint64_t sd_budget = kDefaultSubsetBudget;
    auto* sd = app.add_subcommand("stopping-distance", "Smallest stopping set up to --max-d");
    add_source(sd, sd_src);
    sd->add_option("--max-d", max_d, "Largest subset size to search (default n)");
    sd->add_option("--budget", sd_budget, "Maximum subsets for exhaustive search");

    Source sim_src;
    bool baseline = false;
    std::size_t sim_m = 0;
    std::uint64_t hash_seed = 0;
    std::string sizes = "1-10";
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t sim_seed = 0;
    unsigned workers = 1;
    std::string sim_csv;
    auto* sim = app.add_subcommand("simulate", "Listing success rate per set size, as CSV");
    add_source(sim, sim_src);
    sim->add_flag("--baseline", baseline, "Use a hashed IBLT with --m cells and --k sub-tables");
    sim->add_option("--m", sim_m, "Cells of the hashed baseline");
    sim->add_option("--hash-seed", hash_seed, "Seed of the hashed baseline");
    sim->add_option("--sizes", sizes, "Set sizes, e.g. 1-10 or 1,2,5");
    sim->add_option("--trials", trials, "Trials per set size")->check(CLI::PositiveNumber);
    sim->add_option("--sim-seed", sim_seed, "Seed of the trial streams (defaults to --seed)");
    sim->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sim->add_option("--csv", sim_csv, "Output path (default stdout)");

    std::string n_list;
    std::size_t n_min = 10;
    std::size_t n_max = 1'000'000;
    std::size_t points = 13;
    std::string d_list = "3";
    std::optional<std::size_t> bounds_k;
    std::string bounds_csv;
    auto* bounds = app.add_subcommand("bounds", "Lower bound and construction row counts, as CSV");
    bounds->add_option("--n-list", n_list, "Explicit universe sizes, e.g. 25,381");
    bounds->add_option("--n-min", n_min, "Smallest n of the log grid");
    bounds->add_option("--n-max", n_max, "Largest n of the log grid");
    bounds->add_option("--points", points, "Points in the log grid");
    bounds->add_option("--d", d_list, "d values, e.g. 3 or 3,5,15");
    bounds->add_option("--k", bounds_k, "Fixed column weight");
    bounds->add_option("--csv", bounds_csv, "Output path (default stdout)");

    Source rec_src;
    std::string set_a;
    std::string set_b;
    auto* rec = app.add_subcommand("reconcile-demo", "Subtract IBLT(B) from IBLT(A) and list the difference");
    add_source(rec, rec_src);
    rec->add_option("--set-a", set_a, "File with the elements of A")->required();
    rec->add_option("--set-b", set_b, "File with the elements of B")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_src, gen_out, gen_format);
        }
        if (verify->parsed()) {
            return cmd_verify(ver_src, ver_src.d, samples, verify->count("--sample-seed") ? sample_seed : ver_src.seed,
                              budget);
        }
        if (sd->parsed()) {
            return cmd_stopping_distance(sd_src, max_d, sd_budget);
        }
        if (sim->parsed()) {
            return cmd_simulate(sim_src, baseline, sim_m, hash_seed, sizes, trials,
                                sim->count("--sim-seed") ? sim_seed : sim_src.seed, workers, sim_csv);
        }
        if (bounds->parsed()) {
            return cmd_bounds(n_list, n_min, n_max, points, d_list, bounds_k, bounds_csv);
        }
        if (rec->parsed()) {
            return cmd_reconcile(rec_src, set_a, set_b);
        }
    } catch (const RetriesExhausted& e) {
        std::cerr << "error: " << e.what() << " (last witness " << join(e.witness()) << ")\n";
        return kExitFail;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "; lower --d or pass --samples\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
