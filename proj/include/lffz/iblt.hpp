#pragma once

// Invertible Bloom lookup table with count/xorSum cells, bound either to a
// mapping matrix or to seeded k-way hashing over sub-tables.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lffz/matrix.hpp"

namespace lffz {

/// Which cells an element of {1..n} occupies.
class CellMapping {
  public:
    virtual ~CellMapping() = default;
    virtual std::size_t cell_count() const = 0;
    virtual std::size_t universe() const = 0;
    /// Sorted 0-based cells of element u (1-based).
    virtual void cells_of(std::size_t u, Support& out) const = 0;
    virtual bool covers(std::size_t u, std::size_t cell) const;
    /// Identity used to check that two tables can be subtracted.
    virtual std::string descriptor() const = 0;
};

class MatrixMapping final : public CellMapping {
  public:
    explicit MatrixMapping(const MappingMatrix& matrix);
    std::size_t cell_count() const override { return m_; }
    std::size_t universe() const override { return offsets_.size() - 1; }
    void cells_of(std::size_t u, Support& out) const override;
    bool covers(std::size_t u, std::size_t cell) const override;
    std::string descriptor() const override { return descriptor_; }

  private:
    std::size_t m_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> rows_;
    std::string descriptor_;
};

/// m cells split into k sub-tables of floor(m/k) cells; element u lands in
/// cell t*w + h(seed, t, u) mod w of each sub-table t. Leftover cells stay unused.
class HashedMapping final : public CellMapping {
  public:
    /// Throws std::invalid_argument unless 1 <= k <= m and n >= 1.
    HashedMapping(std::size_t m, std::size_t k, std::size_t n, std::uint64_t seed);
    std::size_t cell_count() const override { return m_; }
    std::size_t universe() const override { return n_; }
    void cells_of(std::size_t u, Support& out) const override;
    std::string descriptor() const override;

    std::size_t sub_tables() const noexcept { return k_; }
    std::size_t sub_table_width() const noexcept { return m_ / k_; }
    std::size_t unused_cells() const noexcept { return m_ - k_ * sub_table_width(); }

  private:
    std::size_t m_;
    std::size_t k_;
    std::size_t n_;
    std::uint64_t seed_;
};

enum class IbltMode { Plain, Signed };

struct Cell {
    std::int64_t count = 0;
    std::uint64_t key_sum = 0;
    bool operator==(const Cell&) const = default;
};

enum class ListingStatus { Success, Failure };

struct ListingOutcome {
    ListingStatus status = ListingStatus::Failure;
    /// Recovered elements, sorted. In plain mode everything lands here.
    std::vector<std::size_t> positive;
    /// Elements recovered with count -1 (signed mode only), sorted.
    std::vector<std::size_t> negative;
    /// Cell state left after peeling; all zero on success.
    std::vector<Cell> residual;

    bool ok() const noexcept { return status == ListingStatus::Success; }
    CounterArray residual_counts() const;
};

/// Order in which pure cells are peeled.
struct PeelPolicy {
    enum class Kind { FirstIndex, Random };
    Kind kind = Kind::FirstIndex;
    std::uint64_t seed = 0;

    static PeelPolicy first_index() { return {}; }
    static PeelPolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

class Iblt {
  public:
    explicit Iblt(std::shared_ptr<const CellMapping> mapping, IbltMode mode = IbltMode::Plain);

    /// Key stored in xorSum for element u: u in the low 32 bits and a 32-bit
    /// fingerprint of u in the high bits. Zero is never a key.
    static std::uint64_t encode(std::size_t u);
    /// Inverse of encode, or 0 when the word is not a well-formed key.
    static std::size_t decode(std::uint64_t key);

    /// Throws std::out_of_range unless 1 <= u <= n.
    void insert(std::size_t u);
    void erase(std::size_t u);
    void clear();

    /// Cellwise difference this - other, in signed mode. Throws
    /// MappingMismatch unless both tables use the same mapping.
    Iblt subtract(const Iblt& other) const;

    /// Peels a copy of the table; the table itself is unchanged.
    ListingOutcome list(PeelPolicy policy = PeelPolicy::first_index()) const;

    const std::vector<Cell>& cells() const noexcept { return cells_; }
    CounterArray counts() const;
    bool is_empty() const;
    IbltMode mode() const noexcept { return mode_; }
    const CellMapping& mapping() const noexcept { return *mapping_; }
    std::shared_ptr<const CellMapping> shared_mapping() const noexcept { return mapping_; }

  private:
    void apply(std::size_t u, std::int64_t delta);

    std::shared_ptr<const CellMapping> mapping_;
    IbltMode mode_;
    std::vector<Cell> cells_;
    mutable Support scratch_;
};

} // namespace lffz
