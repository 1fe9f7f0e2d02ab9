#include "lffz/harness.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "lffz/errors.hpp"
#include "lffz/random.hpp"

namespace lffz {

namespace {

std::uint64_t count_successes(const std::shared_ptr<const CellMapping>& mapping, std::size_t set_size,
                              std::uint64_t seed, std::uint64_t first, std::uint64_t last) {
    const std::size_t n = mapping->universe();
    Iblt table(mapping);
    std::vector<std::size_t> scratch;
    std::vector<std::size_t> subset;
    std::uint64_t ok = 0;
    for (std::uint64_t t = first; t < last; ++t) {
        Rng rng(derive_seed(seed, {set_size, t}));
        sample_subset(rng, n, set_size, scratch, subset);
        table.clear();
        for (const auto u : subset) {
            table.insert(u);
        }
        const ListingOutcome outcome = table.list();
        if (!outcome.ok()) {
            continue;
        }
        std::sort(subset.begin(), subset.end());
        if (outcome.positive == subset && outcome.negative.empty()) {
            ++ok;
        }
    }
    return ok;
}

} // namespace

std::vector<SimulationPoint> simulate(const SimulationConfig& config) {
    if (!config.mapping) {
        throw std::invalid_argument("simulation needs a mapping");
    }
    if (config.trials < 1) {
        throw std::invalid_argument("simulation needs at least one trial");
    }
    const std::size_t n = config.mapping->universe();
    const unsigned workers = std::max(1U, config.workers);
    std::vector<SimulationPoint> points;
    for (const std::size_t size : config.set_sizes) {
        if (size < 1 || size > n) {
            throw std::invalid_argument(fmt::format("set size {} outside 1..{}", size, n));
        }
        SimulationPoint p{size, 0, config.trials};
        if (workers == 1) {
            p.successes = count_successes(config.mapping, size, config.seed, 0, config.trials);
        } else {
            std::vector<std::uint64_t> partial(workers, 0);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                const std::uint64_t first = config.trials * w / workers;
                const std::uint64_t last = config.trials * (w + 1) / workers;
                pool.emplace_back([&, w, first, last] {
                    partial[w] = count_successes(config.mapping, size, config.seed, first, last);
                });
            }
            for (auto& th : pool) {
                th.join();
            }
            for (const auto v : partial) {
                p.successes += v;
            }
        }
        points.push_back(p);
    }
    return points;
}

void write_simulation_csv(std::ostream& out, const std::vector<SimulationPoint>& points) {
    out << "N,success_rate\n";
    for (const auto& p : points) {
        out << fmt::format("{},{}\n", p.set_size, p.success_rate());
    }
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows) {
    out << "n,d,k,lower,lower_tag";
    std::vector<bool> formula_only(upper_bound_names().size(), false);
    if (!rows.empty()) {
        for (std::size_t i = 0; i < rows.front().uppers.size(); ++i) {
            formula_only[i] = rows.front().uppers[i].formula_only;
        }
    }
    for (std::size_t i = 0; i < upper_bound_names().size(); ++i) {
        out << ',' << upper_bound_names()[i] << (formula_only[i] ? ":bound-only" : "");
    }
    out << ",best\n";
    for (const auto& row : rows) {
        out << fmt::format("{},{},{},{},{}", row.n, row.d, row.k ? std::to_string(*row.k) : std::string(),
                           row.lower.value, row.lower.tag);
        for (const auto& name : upper_bound_names()) {
            const UpperEntry* e = row.find(name);
            out << ',';
            if (e != nullptr && e->rows) {
                out << *e->rows;
            }
        }
        out << ',' << row.best.value_or("") << '\n';
    }
}

std::vector<std::size_t> read_set(std::istream& in) {
    std::vector<std::size_t> out;
    std::set<std::size_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::string word;
        while (words >> word) {
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(word, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != word.size() || word.front() == '-' || v == 0) {
                throw FormatError(fmt::format("line {}: '{}' is not a positive element index", line_no, word));
            }
            if (!seen.insert(v).second) {
                throw FormatError(fmt::format("line {}: element {} listed twice", line_no, v));
            }
            out.push_back(static_cast<std::size_t>(v));
        }
    }
    return out;
}

std::vector<std::size_t> read_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open {}", path.string()));
    }
    return read_set(in);
}

ListingOutcome reconcile(const std::shared_ptr<const CellMapping>& mapping, const std::vector<std::size_t>& a,
                         const std::vector<std::size_t>& b) {
    Iblt ta(mapping);
    Iblt tb(mapping);
    for (const auto u : a) {
        ta.insert(u);
    }
    for (const auto u : b) {
        tb.insert(u);
    }
    return ta.subtract(tb).list();
}

} // namespace lffz
