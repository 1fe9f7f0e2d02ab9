#include "lffz/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

#include <fmt/format.h>

#include "lffz/errors.hpp"
#include "lffz/galois.hpp"
#include "lffz/oracle.hpp"
#include "lffz/random.hpp"

namespace lffz {

namespace {

using Emit = std::function<void(std::size_t, Support&)>;

class LambdaGenerator final : public ColumnGenerator {
  public:
    LambdaGenerator(std::size_t m, std::size_t n, Emit emit) : m_(m), n_(n), emit_(std::move(emit)) {}
    std::size_t rows() const override { return m_; }
    std::size_t cols() const override { return n_; }
    void support(std::size_t index, Support& out) const override {
        out.clear();
        emit_(index, out);
    }

  private:
    std::size_t m_;
    std::size_t n_;
    Emit emit_;
};

MappingMatrix wrap(std::size_t m, std::size_t n, Emit emit, ConstructionSpec spec) {
    return MappingMatrix::generated(std::make_shared<LambdaGenerator>(m, n, std::move(emit)), std::move(spec));
}

ConstructionSpec make_spec(ConstructionKind kind, std::size_t n, std::size_t d, std::optional<std::size_t> k = {},
                           std::map<std::string, std::uint64_t> extras = {}) {
    ConstructionSpec s;
    s.kind = kind;
    s.n = n;
    s.d = d;
    s.k = k;
    s.extras = std::move(extras);
    return s;
}

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Smallest m with C(m, k) >= n.
std::size_t min_rows_weight_k(std::size_t n, std::size_t k) {
    std::size_t m = k;
    while (binomial_saturating(m, k) < n) {
        ++m;
    }
    return m;
}

// Colex unranking: the rank-th k-subset of {0, 1, ...}.
void colex_unrank(std::uint64_t rank, std::size_t k, std::size_t offset, Support& out) {
    const std::size_t start = out.size();
    for (std::size_t i = k; i >= 1; --i) {
        std::uint64_t c = i - 1;
        while (binomial_saturating(c + 1, i) <= rank) {
            ++c;
        }
        rank -= binomial_saturating(c, i);
        out.push_back(static_cast<std::uint32_t>(offset + c));
    }
    std::reverse(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
}

void push_range(Support& out, std::size_t from, std::size_t count) {
    for (std::size_t r = 0; r < count; ++r) {
        out.push_back(static_cast<std::uint32_t>(from + r));
    }
}

// ---------------------------------------------------------------------------
// Recursive constructions A and C share a plan tree.

struct PlanNode {
    enum class Kind { AllOnes, Unique, UniqueWeight, Identity, IdentityPlusOnes, IdentityOverOnes, Split };
    Kind kind = Kind::Identity;
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t k = 0;     // weight for UniqueWeight and IdentityOverOnes
    std::size_t width = 0; // identity rows for IdentityOverOnes
    std::size_t parts = 0;
    std::size_t part_cols = 0;
    const PlanNode* top = nullptr;
    const PlanNode* bottom = nullptr;
};

void emit_plan(const PlanNode* node, std::size_t j, std::size_t offset, Support& out) {
    while (true) {
        switch (node->kind) {
        case PlanNode::Kind::AllOnes:
            push_range(out, offset, node->rows);
            return;
        case PlanNode::Kind::Unique: {
            const std::uint64_t v = j + 1;
            for (std::size_t r = 0; r < node->rows; ++r) {
                if ((v >> (node->rows - 1 - r)) & 1U) {
                    out.push_back(static_cast<std::uint32_t>(offset + r));
                }
            }
            return;
        }
        case PlanNode::Kind::UniqueWeight:
            colex_unrank(j, node->k, offset, out);
            return;
        case PlanNode::Kind::Identity:
            out.push_back(static_cast<std::uint32_t>(offset + j));
            return;
        case PlanNode::Kind::IdentityPlusOnes:
            if (j + 1 < node->n) {
                out.push_back(static_cast<std::uint32_t>(offset + j));
            } else {
                push_range(out, offset, node->rows);
            }
            return;
        case PlanNode::Kind::IdentityOverOnes:
            out.push_back(static_cast<std::uint32_t>(offset + j));
            push_range(out, offset + node->width, node->k - 1);
            return;
        case PlanNode::Kind::Split: {
            const std::size_t b = j / node->part_cols;
            const std::size_t l = j % node->part_cols;
            emit_plan(node->top, l, offset + b * node->top->rows, out);
            offset += node->parts * node->top->rows;
            node = node->bottom;
            j = l;
            break;
        }
        }
    }
}

class Planner {
  public:
    // Construction A. forced == 0 means minimize over the split factor.
    const PlanNode* plan_a(std::size_t n, std::size_t d, std::size_t forced) {
        const auto key = std::make_tuple(n, d, std::numeric_limits<std::size_t>::max() - forced);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        PlanNode node;
        node.n = n;
        if (d == 1) {
            node.kind = PlanNode::Kind::AllOnes;
            node.rows = 1;
        } else if (d == 2) {
            node.kind = PlanNode::Kind::Unique;
            node.rows = ceil_log2(static_cast<std::uint64_t>(n) + 1);
        } else if (n <= d) {
            node.kind = PlanNode::Kind::Identity;
            node.rows = n;
        } else if ((forced != 0 && n == d + 1) || (forced == 0 && 2 * n < 3 * (d + 1))) {
            node.kind = PlanNode::Kind::IdentityPlusOnes;
            node.rows = n - 1;
        } else {
            const std::size_t max_i = ceil_div(n, 2);
            auto consider = [&](std::size_t i) {
                const std::size_t c = ceil_div(n, i);
                const PlanNode* top = plan_a(c, d / 2, forced);
                const PlanNode* bottom = plan_a(c, d, forced);
                const std::size_t rows = i * top->rows + bottom->rows;
                if (node.top == nullptr || rows < node.rows) {
                    node.kind = PlanNode::Kind::Split;
                    node.rows = rows;
                    node.parts = i;
                    node.part_cols = c;
                    node.top = top;
                    node.bottom = bottom;
                }
            };
            if (forced != 0) {
                consider(std::clamp<std::size_t>(forced, 2, max_i));
            } else {
                // Only the smallest i for each distinct ceil(n/i) can win a
                // tie-broken minimum, so jump between those.
                for (std::size_t i = 2; i <= max_i;) {
                    consider(i);
                    const std::size_t c = ceil_div(n, i);
                    if (c <= 1) {
                        break;
                    }
                    i = (n - 1) / (c - 1) + 1;
                }
            }
        }
        return store(key, node);
    }

    // Construction C. nullptr when infeasible.
    const PlanNode* plan_c(std::size_t n, std::size_t d, std::size_t k) {
        const auto key = std::make_tuple(n, d, k);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        PlanNode node;
        node.n = n;
        node.k = k;
        if (k == 0) {
            return store_null(key);
        }
        if (d == 1) {
            node.kind = PlanNode::Kind::AllOnes;
            node.rows = k;
        } else if (d == 2) {
            node.kind = PlanNode::Kind::UniqueWeight;
            node.rows = min_rows_weight_k(n, k);
        } else if (n <= d) {
            node.kind = PlanNode::Kind::IdentityOverOnes;
            node.width = n;
            node.rows = n + k - 1;
        } else {
            const std::size_t max_i = ceil_div(n, 2);
            for (std::size_t i = 2; i <= max_i;) {
                const std::size_t c = ceil_div(n, i);
                for (std::size_t k1 = 1; k1 < k; ++k1) {
                    const PlanNode* top = plan_c(c, d / 2, k1);
                    const PlanNode* bottom = plan_c(c, d, k - k1);
                    if (top == nullptr || bottom == nullptr) {
                        continue;
                    }
                    const std::size_t rows = i * top->rows + bottom->rows;
                    if (node.top == nullptr || rows < node.rows) {
                        node.kind = PlanNode::Kind::Split;
                        node.rows = rows;
                        node.parts = i;
                        node.part_cols = c;
                        node.top = top;
                        node.bottom = bottom;
                    }
                }
                if (c <= 1) {
                    break;
                }
                i = (n - 1) / (c - 1) + 1;
            }
            if (node.top == nullptr) {
                return store_null(key);
            }
        }
        return store(key, node);
    }

  private:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

    const PlanNode* store(const Key& key, const PlanNode& node) {
        nodes_.push_back(std::make_unique<PlanNode>(node));
        memo_[key] = nodes_.back().get();
        return nodes_.back().get();
    }
    const PlanNode* store_null(const Key& key) {
        memo_[key] = nullptr;
        return nullptr;
    }

    std::map<Key, const PlanNode*> memo_;
    std::vector<std::unique_ptr<PlanNode>> nodes_;
};

MappingMatrix wrap_plan(std::shared_ptr<Planner> planner, const PlanNode* root, std::size_t n, ConstructionSpec spec) {
    return wrap(
        root->rows, n, [planner = std::move(planner), root](std::size_t j, Support& out) { emit_plan(root, j, 0, out); },
        std::move(spec));
}

// ---------------------------------------------------------------------------
// Construction B tables.

struct TableB {
    std::vector<std::uint64_t> cols;   // cols[m] = Cols(M_m)
    std::vector<std::size_t> split;    // argmax i for m >= 5
};

std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

TableB table_b(std::size_t max_m) {
    TableB t;
    t.cols.assign(std::max<std::size_t>(max_m, 4) + 1, 0);
    t.split.assign(t.cols.size(), 0);
    t.cols[3] = 4;
    t.cols[4] = 7;
    for (std::size_t m = 5; m <= max_m; ++m) {
        std::uint64_t best = 0;
        for (std::size_t i = 2; i + 3 <= m; ++i) {
            const std::uint64_t v = mul_saturating(i, t.cols[m - i]);
            if (v > best) {
                best = v;
                t.split[m] = i;
            }
        }
        t.cols[m] = best > std::numeric_limits<std::uint64_t>::max() - 3 ? best : best + 3;
    }
    return t;
}

void emit_b(const TableB& t, std::size_t m, std::size_t j, std::size_t offset, Support& out) {
    while (true) {
        if (m == 3) {
            if (j < 3) {
                out.push_back(static_cast<std::uint32_t>(offset + j));
            } else {
                push_range(out, offset, 3);
            }
            return;
        }
        if (j < 3) {
            out.push_back(static_cast<std::uint32_t>(offset + m - 3 + j));
            return;
        }
        const std::size_t rest = j - 3;
        if (m == 4) {
            out.push_back(static_cast<std::uint32_t>(offset));
            offset += 1;
            m = 3;
            j = rest;
            continue;
        }
        const std::size_t i = t.split[m];
        const std::size_t c = t.cols[m - i];
        out.push_back(static_cast<std::uint32_t>(offset + rest / c));
        offset += i;
        m -= i;
        j = rest % c;
    }
}

// ---------------------------------------------------------------------------

MappingMatrix from_blocks(std::size_t points, std::vector<Support> blocks, ConstructionSpec spec) {
    auto shared = std::make_shared<const std::vector<Support>>(std::move(blocks));
    const std::size_t n = shared->size();
    return wrap(
        points, n, [shared](std::size_t j, Support& out) { out = (*shared)[j]; }, std::move(spec));
}

std::optional<std::size_t> optional_extra(const ConstructionSpec& spec, const std::string& key) {
    if (auto it = spec.extras.find(key); it != spec.extras.end()) {
        return static_cast<std::size_t>(it->second);
    }
    return std::nullopt;
}

std::uint64_t required_extra(const ConstructionSpec& spec, const std::string& key) {
    auto it = spec.extras.find(key);
    require(it != spec.extras.end(), fmt::format("{} spec needs extras '{}'", kind_name(spec.kind), key));
    return it->second;
}

std::size_t required_k(const ConstructionSpec& spec) {
    require(spec.k.has_value(), fmt::format("{} spec needs k", kind_name(spec.kind)));
    return *spec.k;
}

} // namespace

// ---------------------------------------------------------------------------

MappingMatrix identity_family(std::size_t n, std::size_t d) {
    require(n >= 1 && d >= 1, "identity family needs n >= 1 and d >= 1");
    if (d >= n) {
        return wrap(
            n, n, [](std::size_t j, Support& out) { out.push_back(static_cast<std::uint32_t>(j)); },
            make_spec(ConstructionKind::Identity, n, d));
    }
    const std::size_t m = n - 1;
    return wrap(
        m, n,
        [m](std::size_t j, Support& out) {
            if (j < m) {
                out.push_back(static_cast<std::uint32_t>(j));
            } else {
                push_range(out, 0, m);
            }
        },
        make_spec(ConstructionKind::IdentityPlusOnes, n, d));
}

MappingMatrix unique_columns(std::size_t n) {
    require(n >= 1, "unique columns need n >= 1");
    auto planner = std::make_shared<Planner>();
    const PlanNode* root = planner->plan_a(n, 2, 0);
    return wrap_plan(planner, root, n, make_spec(ConstructionKind::UniqueColumns, n, 2));
}

MappingMatrix unique_columns_weight_k(std::size_t n, std::size_t k) {
    require(n >= 1 && k >= 1, "weight-k unique columns need n >= 1 and k >= 1");
    const std::size_t m = min_rows_weight_k(n, k);
    return wrap(
        m, n, [k](std::size_t j, Support& out) { colex_unrank(j, k, 0, out); },
        make_spec(ConstructionKind::UniqueColumnsWeightK, n, 2, k));
}

std::size_t egh_prime_count(std::size_t n, unsigned exponent) {
    require(n >= 1 && exponent >= 1, "EGH needs n >= 1 and exponent >= 1");
    const BigInt target = power(n, exponent);
    BigInt product = 1;
    std::size_t count = 0;
    std::uint64_t p = 1;
    while (count == 0 || product < target) {
        p = next_prime(p + 1);
        product *= p;
        ++count;
    }
    return count;
}

std::size_t egh_rows(std::size_t n, unsigned exponent) {
    std::size_t m = 0;
    for (const auto p : first_primes(egh_prime_count(n, exponent))) {
        m += p;
    }
    return m;
}

MappingMatrix egh_fpf(std::size_t n, unsigned exponent) {
    const auto primes = first_primes(egh_prime_count(n, exponent));
    std::vector<std::uint64_t> offsets;
    std::size_t m = 0;
    for (const auto p : primes) {
        offsets.push_back(m);
        m += p;
    }
    return wrap(
        m, n,
        [primes, offsets](std::size_t j, Support& out) {
            for (std::size_t b = 0; b < primes.size(); ++b) {
                out.push_back(static_cast<std::uint32_t>(offsets[b] + j % primes[b]));
            }
        },
        make_spec(ConstructionKind::EGH, n, exponent + 1, primes.size(), {{"fpf", exponent}}));
}

MappingMatrix egh(std::size_t n, std::size_t d) {
    require(d >= 1, "EGH needs d >= 1");
    return egh_fpf(n, static_cast<unsigned>(std::max<std::size_t>(1, d - 1)));
}

std::uint64_t ols_prime(std::size_t n) {
    std::uint64_t q = 2;
    while (q * q < n) {
        q = next_prime(q + 1);
    }
    return q;
}

MappingMatrix ols(std::size_t n, std::size_t d) {
    require(n >= 1 && d >= 1, "OLS needs n >= 1 and d >= 1");
    const std::uint64_t q = ols_prime(n);
    require(d <= q + 1, fmt::format("OLS with n={} uses q={} and supports d <= {}, got d={}", n, q, q + 1, d));
    return wrap(
        d * q, n,
        [q, d](std::size_t j, Support& out) {
            const std::uint64_t a = j / q;
            const std::uint64_t b = j % q;
            for (std::uint64_t blk = 0; blk < d; ++blk) {
                const std::uint64_t row = blk < q ? (a + blk * b) % q : b;
                out.push_back(static_cast<std::uint32_t>(blk * q + row));
            }
        },
        make_spec(ConstructionKind::OLS, n, d, d, {{"q", q}}));
}

MappingMatrix recursive_a(std::size_t n, std::size_t d, std::optional<std::size_t> forced_split) {
    require(n >= 1 && d >= 1, "construction A needs n >= 1 and d >= 1");
    require(!forced_split || *forced_split >= 2, "forced split factor must be at least 2");
    auto planner = std::make_shared<Planner>();
    const PlanNode* root = planner->plan_a(n, d, forced_split.value_or(0));
    ConstructionSpec spec = make_spec(ConstructionKind::RecursiveA, n, d);
    if (forced_split) {
        spec.extras["split"] = *forced_split;
    }
    return wrap_plan(planner, root, n, std::move(spec));
}

std::size_t recursive_a_rows(std::size_t n, std::size_t d, std::optional<std::size_t> forced_split) {
    require(n >= 1 && d >= 1, "construction A needs n >= 1 and d >= 1");
    Planner planner;
    return planner.plan_a(n, d, forced_split.value_or(0))->rows;
}

std::uint64_t recursive_b_columns(std::size_t m) {
    require(m >= 3, "construction B needs m >= 3");
    return table_b(m).cols[m];
}

namespace {
std::size_t smallest_b(std::size_t n, TableB& table) {
    std::size_t m = 3;
    table = table_b(3);
    while (table.cols[m] < n) {
        ++m;
        table = table_b(m);
    }
    return m;
}
} // namespace

std::size_t recursive_b_rows(std::size_t n) {
    require(n >= 3, "construction B needs n >= 3");
    TableB table;
    return smallest_b(n, table);
}

MappingMatrix recursive_b(std::size_t n) {
    require(n >= 3, "construction B needs n >= 3");
    auto table = std::make_shared<TableB>();
    const std::size_t m = smallest_b(n, *table);
    return wrap(
        m, n, [table, m](std::size_t j, Support& out) { emit_b(*table, m, j, 0, out); },
        make_spec(ConstructionKind::RecursiveB, n, 3));
}

MappingMatrix recursive_c(std::size_t n, std::size_t d, std::size_t k) {
    require(n >= 1 && d >= 1 && k >= 1, "construction C needs n, d, k >= 1");
    auto planner = std::make_shared<Planner>();
    const PlanNode* root = planner->plan_c(n, d, k);
    require(root != nullptr, fmt::format("construction C has no feasible weight split for n={} d={} k={}", n, d, k));
    return wrap_plan(planner, root, n, make_spec(ConstructionKind::RecursiveC, n, d, k));
}

std::optional<std::size_t> recursive_c_rows(std::size_t n, std::size_t d, std::size_t k) {
    if (n == 0 || d == 0 || k == 0) {
        return std::nullopt;
    }
    Planner planner;
    const PlanNode* root = planner.plan_c(n, d, k);
    if (root == nullptr) {
        return std::nullopt;
    }
    return root->rows;
}

std::vector<Support> bose_triples(std::size_t t) {
    const std::size_t v = 2 * t + 1;
    std::vector<Support> blocks;
    blocks.reserve(v * (3 * t + 1));
    auto point = [v](std::size_t x, std::size_t c) { return static_cast<std::uint32_t>(c * v + x); };
    for (std::size_t x = 0; x < v; ++x) {
        blocks.push_back({point(x, 0), point(x, 1), point(x, 2)});
    }
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t x = 0; x < v; ++x) {
            for (std::size_t y = x + 1; y < v; ++y) {
                Support b{point(x, c), point(y, c), point(((x + y) * (t + 1)) % v, (c + 1) % 3)};
                std::sort(b.begin(), b.end());
                blocks.push_back(std::move(b));
            }
        }
    }
    return blocks;
}

std::size_t steiner_points(std::size_t n) {
    std::size_t t = 0;
    while ((2 * t + 1) * (3 * t + 1) < n) {
        ++t;
    }
    return 6 * t + 3;
}

MappingMatrix steiner_triple(std::size_t n) {
    require(n >= 1, "Steiner triple system needs n >= 1");
    const std::size_t m = steiner_points(n);
    auto blocks = bose_triples((m - 3) / 6);
    blocks.resize(n);
    return from_blocks(m, std::move(blocks), make_spec(ConstructionKind::SteinerTriple, n, 3, 3));
}

InversivePlaneBlocks inversive_plane_blocks(std::uint64_t q) {
    const PrimePower pp = prime_power(q);
    require(pp && q <= 16, fmt::format("inversive plane needs a prime power q <= 16, got {}", q));
    const PrimePowerField field(static_cast<std::uint32_t>(pp.prime), 2 * pp.exponent);
    const std::uint32_t qq = field.size();
    const std::uint32_t infinity = qq;
    const std::size_t points = qq + 1;

    // Homogeneous coordinates: finite z is (z : 1), infinity is (1 : 0).
    auto coords = [&](std::uint32_t z) {
        return z == infinity ? std::pair<std::uint32_t, std::uint32_t>{1, 0}
                             : std::pair<std::uint32_t, std::uint32_t>{z, 1};
    };
    auto det = [&](std::uint32_t a, std::uint32_t b) {
        const auto [a0, a1] = coords(a);
        const auto [b0, b1] = coords(b);
        return field.sub(field.mul(a0, b1), field.mul(a1, b0));
    };

    std::vector<bool> covered(points * points * points, false);
    auto index = [points](std::size_t a, std::size_t b, std::size_t c) { return (a * points + b) * points + c; };

    InversivePlaneBlocks result;
    result.modulus_code = field.modulus_code();
    for (std::uint32_t p1 = 0; p1 < points; ++p1) {
        for (std::uint32_t p2 = p1 + 1; p2 < points; ++p2) {
            for (std::uint32_t p3 = p2 + 1; p3 < points; ++p3) {
                if (covered[index(p1, p2, p3)]) {
                    continue;
                }
                // Moebius map sending p1 -> inf, p2 -> 0, p3 -> 1; the circle is
                // the preimage of GF(q) u {inf}.
                const std::uint32_t c31 = det(p3, p1);
                const std::uint32_t c32 = det(p3, p2);
                Support block;
                for (std::uint32_t z = 0; z < points; ++z) {
                    const std::uint32_t den = field.mul(det(z, p1), c32);
                    if (den == 0) {
                        block.push_back(z);
                        continue;
                    }
                    const std::uint32_t t = field.mul(field.mul(det(z, p2), c31), field.inverse(den));
                    if (field.pow(t, q) == t) {
                        block.push_back(z);
                    }
                }
                if (block.size() != q + 1) {
                    throw std::logic_error(fmt::format("inversive plane circle has {} points, expected {}",
                                                       block.size(), q + 1));
                }
                for (std::size_t a = 0; a < block.size(); ++a) {
                    for (std::size_t b = a + 1; b < block.size(); ++b) {
                        for (std::size_t c = b + 1; c < block.size(); ++c) {
                            covered[index(block[a], block[b], block[c])] = true;
                        }
                    }
                }
                result.blocks.push_back(std::move(block));
            }
        }
    }
    std::sort(result.blocks.begin(), result.blocks.end());
    return result;
}

MappingMatrix inversive_plane(std::uint64_t q, std::optional<std::size_t> n) {
    auto planes = inversive_plane_blocks(q);
    const std::size_t full = planes.blocks.size();
    const std::size_t cols = n.value_or(full);
    require(cols >= 1 && cols <= full, fmt::format("inversive plane q={} has {} blocks, requested {}", q, full, cols));
    planes.blocks.resize(cols);
    return from_blocks(q * q + 1, std::move(planes.blocks),
                       make_spec(ConstructionKind::InversivePlane, cols, (q + 2) / 2, q + 1,
                                 {{"q", q}, {"poly", planes.modulus_code}}));
}

MappingMatrix array_code(std::uint64_t q, std::size_t k, std::optional<std::size_t> n) {
    require(q >= 3 && is_prime(q), fmt::format("array code needs an odd prime q, got {}", q));
    require(k >= 2 && k <= 4, fmt::format("array code needs k in {{2,3,4}}, got {}", k));
    require(k <= q, fmt::format("array code needs k <= q, got k={} q={}", k, q));
    const std::size_t cols = n.value_or(q * q);
    require(cols >= 1 && cols <= q * q, fmt::format("array code q={} has {} columns, requested {}", q, q * q, cols));
    return wrap(
        k * q, cols,
        [q, k](std::size_t j, Support& out) {
            const std::uint64_t a = j / q;
            const std::uint64_t b = j % q;
            for (std::uint64_t blk = 0; blk < k; ++blk) {
                out.push_back(static_cast<std::uint32_t>(blk * q + (a + blk * b) % q));
            }
        },
        make_spec(ConstructionKind::ArrayCode, cols, 2 * k - 1, k, {{"q", q}}));
}

MappingMatrix bch_complement(unsigned ell, std::optional<std::size_t> n) {
    auto field = std::make_shared<const BinaryField>(ell);
    const std::size_t full = field->order();
    const std::size_t cols = n.value_or(full);
    require(cols >= 1 && cols <= full, fmt::format("BCH over GF(2^{}) has {} columns, requested {}", ell, full, cols));
    return wrap(
        4 * ell, cols,
        [field, ell](std::size_t j, Support& out) {
            const std::uint64_t h = field->alpha_power(j) | (std::uint64_t{field->alpha_power(3 * j)} << ell);
            for (unsigned r = 0; r < 2 * ell; ++r) {
                if ((h >> r) & 1U) {
                    out.push_back(r);
                }
            }
            for (unsigned r = 0; r < 2 * ell; ++r) {
                if (((h >> r) & 1U) == 0) {
                    out.push_back(2 * ell + r);
                }
            }
        },
        make_spec(ConstructionKind::BchComplement, cols, 4, 2 * ell,
                  {{"ell", ell}, {"poly", BinaryField::primitive_polynomial(ell)}}));
}

std::size_t bipartite_rows(std::size_t n) {
    require(n >= 1, "bipartite construction needs n >= 1");
    // ceil(2 sqrt n) is the smallest m with m^2 >= 4n.
    std::size_t m = isqrt(4 * static_cast<std::uint64_t>(n));
    if (static_cast<std::uint64_t>(m) * m < 4 * static_cast<std::uint64_t>(n)) {
        ++m;
    }
    while ((m / 2) * (m - m / 2) < n) {
        ++m;
    }
    return m;
}

MappingMatrix bipartite_weight2(std::size_t n) {
    const std::size_t m = bipartite_rows(n);
    const std::size_t h1 = m / 2;
    const std::size_t h2 = m - h1;
    return wrap(
        m, n,
        [h1, h2](std::size_t j, Support& out) {
            out.push_back(static_cast<std::uint32_t>(j / h2));
            out.push_back(static_cast<std::uint32_t>(h1 + j % h2));
        },
        make_spec(ConstructionKind::BipartiteWeight2, n, 3, 2));
}

std::size_t covering_array_rows(std::size_t n, std::size_t d) {
    require(n >= 1 && d >= 1 && d <= 62, "covering array needs n >= 1 and 1 <= d <= 62");
    const double pd = std::ldexp(1.0, static_cast<int>(d));
    const double m = static_cast<double>(d) * std::log2(static_cast<double>(n)) / std::log2(pd / (pd - 1.0));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(m)));
}

MappingMatrix covering_array_attempt(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t attempt) {
    const std::size_t m = covering_array_rows(n, d);
    const std::uint64_t subseed = derive_seed(seed, {attempt});
    return wrap(
        m, n,
        [m, subseed](std::size_t j, Support& out) {
            Rng rng(derive_seed(subseed, {j}));
            std::uint64_t word = 0;
            for (std::size_t r = 0; r < m; ++r) {
                if (r % 64 == 0) {
                    word = rng.next();
                }
                if ((word >> (r % 64)) & 1U) {
                    out.push_back(static_cast<std::uint32_t>(r));
                }
            }
        },
        make_spec(ConstructionKind::CoveringArrayRandom, n, d, std::nullopt, {{"seed", seed}, {"attempt", attempt}}));
}

MappingMatrix covering_array_random(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t max_retries) {
    require(d <= n, "covering array needs d <= n");
    require(max_retries >= 1, "covering array needs at least one attempt");
    std::vector<std::size_t> last_witness;
    for (std::uint64_t attempt = 0; attempt < max_retries; ++attempt) {
        const MappingMatrix candidate = covering_array_attempt(n, d, seed, attempt);
        bool zero_column = false;
        for (std::size_t i = 1; i <= n; ++i) {
            if (candidate.column_weight(i) == 0) {
                zero_column = true;
                last_witness = {i};
                break;
            }
        }
        if (zero_column) {
            continue;
        }
        const auto verdict = is_d_decodable(candidate, d);
        if (verdict.decodable) {
            return candidate;
        }
        last_witness = verdict.witness.value_or(std::vector<std::size_t>{});
    }
    throw RetriesExhausted(fmt::format("covering array n={} d={} seed={} failed {} attempts", n, d, seed, max_retries),
                           std::move(last_witness));
}

MappingMatrix build(const ConstructionSpec& spec) {
    switch (spec.kind) {
    case ConstructionKind::Identity:
    case ConstructionKind::IdentityPlusOnes:
        return identity_family(spec.n, spec.d);
    case ConstructionKind::UniqueColumns:
        return unique_columns(spec.n);
    case ConstructionKind::UniqueColumnsWeightK:
        return unique_columns_weight_k(spec.n, required_k(spec));
    case ConstructionKind::EGH:
        if (auto fpf = optional_extra(spec, "fpf")) {
            return egh_fpf(spec.n, static_cast<unsigned>(*fpf));
        }
        return egh(spec.n, spec.d);
    case ConstructionKind::OLS:
        return ols(spec.n, spec.d);
    case ConstructionKind::RecursiveA:
        return recursive_a(spec.n, spec.d, optional_extra(spec, "split"));
    case ConstructionKind::RecursiveB:
        return recursive_b(spec.n);
    case ConstructionKind::RecursiveC:
        return recursive_c(spec.n, spec.d, required_k(spec));
    case ConstructionKind::SteinerTriple:
        return steiner_triple(spec.n);
    case ConstructionKind::InversivePlane: {
        const std::optional<std::size_t> n = spec.n == 0 ? std::nullopt : std::optional<std::size_t>(spec.n);
        return inversive_plane(required_extra(spec, "q"), n);
    }
    case ConstructionKind::ArrayCode: {
        const std::optional<std::size_t> n = spec.n == 0 ? std::nullopt : std::optional<std::size_t>(spec.n);
        return array_code(required_extra(spec, "q"), required_k(spec), n);
    }
    case ConstructionKind::BchComplement: {
        unsigned ell = 0;
        if (auto e = optional_extra(spec, "ell")) {
            ell = static_cast<unsigned>(*e);
        } else {
            require(spec.n >= 1, "BCH spec needs n or extras 'ell'");
            ell = std::max(2U, ceil_log2(static_cast<std::uint64_t>(spec.n) + 1));
        }
        const std::optional<std::size_t> n = spec.n == 0 ? std::nullopt : std::optional<std::size_t>(spec.n);
        return bch_complement(ell, n);
    }
    case ConstructionKind::BipartiteWeight2:
        return bipartite_weight2(spec.n);
    case ConstructionKind::CoveringArrayRandom: {
        const std::uint64_t seed = optional_extra(spec, "seed").value_or(0);
        if (auto attempt = optional_extra(spec, "attempt")) {
            return covering_array_attempt(spec.n, spec.d, seed, *attempt);
        }
        return covering_array_random(spec.n, spec.d, seed, optional_extra(spec, "retries").value_or(64));
    }
    }
    throw std::invalid_argument("unknown construction kind");
}

} // namespace lffz
