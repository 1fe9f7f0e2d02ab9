#pragma once

// Mapping matrices: the m x n binary matrix that assigns each element of the
// universe {1..n} to the IBLT cells (rows) it occupies.
//
// Columns are addressed 1-based, rows are reported 0-based inside supports.
// A matrix is either dense (row-major packed bits) or backed by a column
// generator that computes one column on demand from a construction spec.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lffz {

enum class ConstructionKind {
    Identity,
    IdentityPlusOnes,
    UniqueColumns,
    UniqueColumnsWeightK,
    EGH,
    OLS,
    RecursiveA,
    RecursiveB,
    RecursiveC,
    SteinerTriple,
    InversivePlane,
    ArrayCode,
    BchComplement,
    BipartiteWeight2,
    CoveringArrayRandom,
};

std::string_view kind_name(ConstructionKind kind);
std::optional<ConstructionKind> parse_kind(std::string_view name);

/// Parameters that fully determine a constructed matrix.
struct ConstructionSpec {
    ConstructionKind kind = ConstructionKind::Identity;
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<std::size_t> k;
    /// Kind-specific knobs: q, ell, seed, attempt, split, poly, fpf.
    std::map<std::string, std::uint64_t> extras;

    /// Single-line "kind=... n=... d=... [k=...] key=value..." rendering.
    std::string describe() const;

    bool operator==(const ConstructionSpec&) const = default;
};

/// Sorted 0-based row indices of the ones in a column.
using Support = std::vector<std::uint32_t>;

/// Per-row counts of a stored set: the column-sum over its elements.
using CounterArray = std::vector<std::int64_t>;

class ColumnGenerator {
  public:
    virtual ~ColumnGenerator() = default;
    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    /// Writes the support of column `index` (0-based) into `out`, sorted.
    virtual void support(std::size_t index, Support& out) const = 0;
};

class MappingMatrix {
  public:
    /// Default budget for materialization, in bits.
    static constexpr std::uint64_t kDefaultBudgetBits = std::uint64_t{1} << 31;

    /// Rows given as strings over {0,1}; every row must have the same length.
    static MappingMatrix from_rows(std::span<const std::string> rows);
    static MappingMatrix from_rows(std::initializer_list<std::string> rows);
    /// Columns given as 0-based row supports.
    static MappingMatrix from_columns(std::size_t m, std::span<const Support> columns);
    static MappingMatrix generated(std::shared_ptr<const ColumnGenerator> generator,
                                   std::optional<ConstructionSpec> spec = std::nullopt);

    std::size_t rows() const noexcept { return m_; }
    std::size_t cols() const noexcept { return n_; }
    bool is_dense() const noexcept { return generator_ == nullptr; }
    const std::optional<ConstructionSpec>& spec() const noexcept { return spec_; }
    MappingMatrix with_spec(ConstructionSpec spec) const;

    /// Entry at 1-based (row, column).
    bool at(std::size_t row, std::size_t col) const;
    /// Column i (1-based) as m entries in {0,1}.
    std::vector<std::uint8_t> column(std::size_t i) const;
    /// Column i (1-based) as sorted 0-based row indices.
    Support support(std::size_t i) const;
    void support(std::size_t i, Support& out) const;
    std::size_t column_weight(std::size_t i) const;

    /// Dense copy; identity on dense input. Throws BudgetExceeded if m*n > budget_bits.
    MappingMatrix materialize(std::uint64_t budget_bits = kDefaultBudgetBits) const;

    /// Same shape and same bits, regardless of backend or attached spec.
    friend bool operator==(const MappingMatrix& a, const MappingMatrix& b);

  private:
    MappingMatrix() = default;
    static MappingMatrix dense_from_words(std::size_t m, std::size_t n, std::vector<std::uint64_t> words);
    void check_column_index(std::size_t i) const;
    void require_nonzero_columns() const;

    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::size_t words_per_row_ = 0;
    std::shared_ptr<const std::vector<std::uint64_t>> bits_;
    std::shared_ptr<const ColumnGenerator> generator_;
    std::optional<ConstructionSpec> spec_;
};

CounterArray counter_array(const MappingMatrix& matrix, std::span<const std::size_t> elements);

enum class MatrixFormat { Dense, Sparse };

MappingMatrix read_matrix(std::istream& in);
MappingMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const MappingMatrix& matrix, std::ostream& out, MatrixFormat format = MatrixFormat::Dense);
void write_matrix(const MappingMatrix& matrix, const std::filesystem::path& path,
                  MatrixFormat format = MatrixFormat::Dense);

} // namespace lffz
