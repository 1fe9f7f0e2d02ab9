#include "lffz/iblt.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>

#include "lffz/errors.hpp"
#include "lffz/random.hpp"

namespace lffz {

namespace {

constexpr std::uint64_t kFingerprintSalt = 0x5bd1e9955bd1e995ULL;

std::uint32_t fingerprint(std::uint64_t u) { return static_cast<std::uint32_t>(mix64(u ^ kFingerprintSalt) >> 32); }

} // namespace

bool CellMapping::covers(std::size_t u, std::size_t cell) const {
    Support s;
    cells_of(u, s);
    return std::binary_search(s.begin(), s.end(), static_cast<std::uint32_t>(cell));
}

MatrixMapping::MatrixMapping(const MappingMatrix& matrix) : m_(matrix.rows()) {
    const std::size_t n = matrix.cols();
    if (n >= (std::size_t{1} << 32)) {
        throw std::invalid_argument("IBLT universe must be below 2^32");
    }
    offsets_.reserve(n + 1);
    offsets_.push_back(0);
    Support s;
    std::uint64_t h = mix64(m_ ^ mix64(n));
    for (std::size_t i = 1; i <= n; ++i) {
        matrix.support(i, s);
        if (s.empty()) {
            throw FormatError(fmt::format("column {} is all zero", i));
        }
        for (const auto r : s) {
            h = mix64(h ^ (static_cast<std::uint64_t>(i) << 32 | r));
        }
        rows_.insert(rows_.end(), s.begin(), s.end());
        offsets_.push_back(rows_.size());
    }
    descriptor_ = fmt::format("matrix m={} n={} h={:016x}", m_, n, h);
}

void MatrixMapping::cells_of(std::size_t u, Support& out) const {
    out.assign(rows_.begin() + static_cast<std::ptrdiff_t>(offsets_[u - 1]),
               rows_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]));
}

bool MatrixMapping::covers(std::size_t u, std::size_t cell) const {
    const auto first = rows_.begin() + static_cast<std::ptrdiff_t>(offsets_[u - 1]);
    const auto last = rows_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
    return std::binary_search(first, last, static_cast<std::uint32_t>(cell));
}

HashedMapping::HashedMapping(std::size_t m, std::size_t k, std::size_t n, std::uint64_t seed)
    : m_(m), k_(k), n_(n), seed_(seed) {
    if (k < 1 || k > m) {
        throw std::invalid_argument(fmt::format("hashed IBLT needs 1 <= k <= m, got m={} k={}", m, k));
    }
    if (n < 1 || n >= (std::size_t{1} << 32)) {
        throw std::invalid_argument("hashed IBLT universe must be in [1, 2^32)");
    }
}

void HashedMapping::cells_of(std::size_t u, Support& out) const {
    out.clear();
    const std::size_t w = sub_table_width();
    for (std::size_t t = 0; t < k_; ++t) {
        out.push_back(static_cast<std::uint32_t>(t * w + derive_seed(seed_, {t, u}) % w));
    }
}

std::string HashedMapping::descriptor() const {
    return fmt::format("hashed m={} k={} n={} seed={}", m_, k_, n_, seed_);
}

CounterArray ListingOutcome::residual_counts() const {
    CounterArray c;
    c.reserve(residual.size());
    for (const auto& cell : residual) {
        c.push_back(cell.count);
    }
    return c;
}

Iblt::Iblt(std::shared_ptr<const CellMapping> mapping, IbltMode mode)
    : mapping_(std::move(mapping)), mode_(mode), cells_(mapping_->cell_count()) {}

std::uint64_t Iblt::encode(std::size_t u) { return static_cast<std::uint64_t>(u) | std::uint64_t{fingerprint(u)} << 32; }

std::size_t Iblt::decode(std::uint64_t key) {
    const std::uint64_t u = key & 0xffffffffULL;
    if (u == 0 || (key >> 32) != fingerprint(u)) {
        return 0;
    }
    return static_cast<std::size_t>(u);
}

void Iblt::apply(std::size_t u, std::int64_t delta) {
    if (u < 1 || u > mapping_->universe()) {
        throw std::out_of_range(fmt::format("key {} outside 1..{}", u, mapping_->universe()));
    }
    mapping_->cells_of(u, scratch_);
    const std::uint64_t key = encode(u);
    for (const auto r : scratch_) {
        cells_[r].count += delta;
        cells_[r].key_sum ^= key;
    }
}

void Iblt::insert(std::size_t u) { apply(u, +1); }
void Iblt::erase(std::size_t u) { apply(u, -1); }

void Iblt::clear() { std::fill(cells_.begin(), cells_.end(), Cell{}); }

Iblt Iblt::subtract(const Iblt& other) const {
    if (mapping_ != other.mapping_ &&
        (mapping_->cell_count() != other.mapping_->cell_count() ||
         mapping_->descriptor() != other.mapping_->descriptor())) {
        throw MappingMismatch(fmt::format("cannot subtract '{}' from '{}'", other.mapping_->descriptor(),
                                          mapping_->descriptor()));
    }
    Iblt out(mapping_, IbltMode::Signed);
    for (std::size_t r = 0; r < cells_.size(); ++r) {
        out.cells_[r].count = cells_[r].count - other.cells_[r].count;
        out.cells_[r].key_sum = cells_[r].key_sum ^ other.cells_[r].key_sum;
    }
    return out;
}

CounterArray Iblt::counts() const {
    CounterArray c;
    c.reserve(cells_.size());
    for (const auto& cell : cells_) {
        c.push_back(cell.count);
    }
    return c;
}

bool Iblt::is_empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c == Cell{}; });
}

ListingOutcome Iblt::list(PeelPolicy policy) const {
    std::vector<Cell> cells = cells_;
    const bool is_signed = mode_ == IbltMode::Signed;
    auto candidate = [&](const Cell& c) { return c.count == 1 || (is_signed && c.count == -1); };

    // Worklist of cells that may be pure; entries are re-checked when taken.
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap;
    std::vector<std::size_t> pool;
    Rng rng(policy.seed);
    const bool random = policy.kind == PeelPolicy::Kind::Random;
    auto push = [&](std::size_t r) {
        if (random) {
            pool.push_back(r);
        } else {
            heap.push(r);
        }
    };
    auto pop = [&](std::size_t& r) {
        if (random) {
            if (pool.empty()) {
                return false;
            }
            const std::size_t i = rng.below(pool.size());
            r = pool[i];
            pool[i] = pool.back();
            pool.pop_back();
            return true;
        }
        if (heap.empty()) {
            return false;
        }
        r = heap.top();
        heap.pop();
        return true;
    };
    for (std::size_t r = 0; r < cells.size(); ++r) {
        if (candidate(cells[r])) {
            push(r);
        }
    }

    ListingOutcome out;
    std::unordered_set<std::size_t> seen_pos;
    std::unordered_set<std::size_t> seen_neg;
    Support support;
    bool corrupted = false;
    std::size_t r = 0;
    while (!corrupted && pop(r)) {
        const Cell cell = cells[r];
        if (!candidate(cell)) {
            continue;
        }
        const std::size_t u = decode(cell.key_sum);
        const bool valid = u >= 1 && u <= mapping_->universe() && mapping_->covers(u, r);
        if (!valid) {
            // A signed cell can hold count +-1 without being pure; it may
            // become pure later. In plain mode a set cannot do that.
            if (is_signed) {
                continue;
            }
            corrupted = true;
            break;
        }
        const bool positive = cell.count == 1;
        auto& seen = positive ? seen_pos : seen_neg;
        if (!seen.insert(u).second) {
            corrupted = true;
            break;
        }
        (positive ? out.positive : out.negative).push_back(u);
        mapping_->cells_of(u, support);
        const std::uint64_t key = encode(u);
        for (const auto row : support) {
            cells[row].count -= cell.count;
            cells[row].key_sum ^= key;
            if (candidate(cells[row])) {
                push(row);
            }
        }
    }

    const bool clean = std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c == Cell{}; });
    out.status = (!corrupted && clean) ? ListingStatus::Success : ListingStatus::Failure;
    std::sort(out.positive.begin(), out.positive.end());
    std::sort(out.negative.begin(), out.negative.end());
    out.residual = std::move(cells);
    return out;
}

} // namespace lffz
