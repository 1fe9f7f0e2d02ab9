#include "lffz/matrix.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "lffz/errors.hpp"

namespace lffz {

namespace {

constexpr std::array<std::pair<ConstructionKind, std::string_view>, 15> kKindNames{{
    {ConstructionKind::Identity, "identity"},
    {ConstructionKind::IdentityPlusOnes, "identity-plus-ones"},
    {ConstructionKind::UniqueColumns, "unique-columns"},
    {ConstructionKind::UniqueColumnsWeightK, "unique-columns-k"},
    {ConstructionKind::EGH, "egh"},
    {ConstructionKind::OLS, "ols"},
    {ConstructionKind::RecursiveA, "recursive-a"},
    {ConstructionKind::RecursiveB, "recursive-b"},
    {ConstructionKind::RecursiveC, "recursive-c"},
    {ConstructionKind::SteinerTriple, "steiner-triple"},
    {ConstructionKind::InversivePlane, "inversive-plane"},
    {ConstructionKind::ArrayCode, "array-code"},
    {ConstructionKind::BchComplement, "bch"},
    {ConstructionKind::BipartiteWeight2, "bipartite"},
    {ConstructionKind::CoveringArrayRandom, "covering-random"},
}};

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

} // namespace

std::string_view kind_name(ConstructionKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<ConstructionKind> parse_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string ConstructionSpec::describe() const {
    std::string out = fmt::format("kind={} n={} d={}", kind_name(kind), n, d);
    if (k) {
        out += fmt::format(" k={}", *k);
    }
    for (const auto& [key, value] : extras) {
        out += fmt::format(" {}={}", key, value);
    }
    return out;
}

MappingMatrix MappingMatrix::dense_from_words(std::size_t m, std::size_t n, std::vector<std::uint64_t> words) {
    MappingMatrix matrix;
    matrix.m_ = m;
    matrix.n_ = n;
    matrix.words_per_row_ = words_for(n);
    matrix.bits_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(words));
    matrix.require_nonzero_columns();
    return matrix;
}

MappingMatrix MappingMatrix::from_rows(std::span<const std::string> rows) {
    if (rows.empty() || rows.front().empty()) {
        throw FormatError("matrix must have at least one row and one column");
    }
    const std::size_t m = rows.size();
    const std::size_t n = rows.front().size();
    const std::size_t wpr = words_for(n);
    std::vector<std::uint64_t> words(m * wpr, 0);
    for (std::size_t r = 0; r < m; ++r) {
        if (rows[r].size() != n) {
            throw FormatError(fmt::format("row {} has length {}, expected {}", r + 1, rows[r].size(), n));
        }
        for (std::size_t c = 0; c < n; ++c) {
            const char ch = rows[r][c];
            if (ch == '1') {
                words[r * wpr + c / 64] |= std::uint64_t{1} << (c % 64);
            } else if (ch != '0') {
                throw FormatError(fmt::format("row {} contains invalid character '{}'", r + 1, ch));
            }
        }
    }
    return dense_from_words(m, n, std::move(words));
}

MappingMatrix MappingMatrix::from_rows(std::initializer_list<std::string> rows) {
    const std::vector<std::string> v(rows);
    return from_rows(std::span<const std::string>(v));
}

MappingMatrix MappingMatrix::from_columns(std::size_t m, std::span<const Support> columns) {
    if (m == 0 || columns.empty()) {
        throw FormatError("matrix must have at least one row and one column");
    }
    const std::size_t n = columns.size();
    const std::size_t wpr = words_for(n);
    std::vector<std::uint64_t> words(m * wpr, 0);
    for (std::size_t c = 0; c < n; ++c) {
        for (const std::uint32_t r : columns[c]) {
            if (r >= m) {
                throw FormatError(fmt::format("column {} references row {} of {}", c + 1, r + 1, m));
            }
            words[r * wpr + c / 64] |= std::uint64_t{1} << (c % 64);
        }
    }
    return dense_from_words(m, n, std::move(words));
}

MappingMatrix MappingMatrix::generated(std::shared_ptr<const ColumnGenerator> generator,
                                       std::optional<ConstructionSpec> spec) {
    if (!generator || generator->rows() == 0 || generator->cols() == 0) {
        throw std::invalid_argument("generator must describe a non-empty matrix");
    }
    MappingMatrix matrix;
    matrix.m_ = generator->rows();
    matrix.n_ = generator->cols();
    matrix.generator_ = std::move(generator);
    matrix.spec_ = std::move(spec);
    return matrix;
}

MappingMatrix MappingMatrix::with_spec(ConstructionSpec spec) const {
    MappingMatrix copy = *this;
    copy.spec_ = std::move(spec);
    return copy;
}

void MappingMatrix::check_column_index(std::size_t i) const {
    if (i < 1 || i > n_) {
        throw std::out_of_range(fmt::format("column index {} outside 1..{}", i, n_));
    }
}

void MappingMatrix::require_nonzero_columns() const {
    std::vector<std::uint64_t> seen(words_per_row_, 0);
    for (std::size_t r = 0; r < m_; ++r) {
        for (std::size_t w = 0; w < words_per_row_; ++w) {
            seen[w] |= (*bits_)[r * words_per_row_ + w];
        }
    }
    for (std::size_t c = 0; c < n_; ++c) {
        if (((seen[c / 64] >> (c % 64)) & 1U) == 0) {
            throw FormatError(fmt::format("column {} is all zero", c + 1));
        }
    }
}

bool MappingMatrix::at(std::size_t row, std::size_t col) const {
    check_column_index(col);
    if (row < 1 || row > m_) {
        throw std::out_of_range(fmt::format("row index {} outside 1..{}", row, m_));
    }
    if (is_dense()) {
        const std::size_t c = col - 1;
        return (((*bits_)[(row - 1) * words_per_row_ + c / 64] >> (c % 64)) & 1U) != 0;
    }
    const Support s = support(col);
    return std::binary_search(s.begin(), s.end(), static_cast<std::uint32_t>(row - 1));
}

void MappingMatrix::support(std::size_t i, Support& out) const {
    check_column_index(i);
    out.clear();
    if (!is_dense()) {
        generator_->support(i - 1, out);
        return;
    }
    const std::size_t c = i - 1;
    const std::size_t word = c / 64;
    const std::size_t bit = c % 64;
    for (std::size_t r = 0; r < m_; ++r) {
        if ((((*bits_)[r * words_per_row_ + word] >> bit) & 1U) != 0) {
            out.push_back(static_cast<std::uint32_t>(r));
        }
    }
}

Support MappingMatrix::support(std::size_t i) const {
    Support out;
    support(i, out);
    return out;
}

std::vector<std::uint8_t> MappingMatrix::column(std::size_t i) const {
    std::vector<std::uint8_t> out(m_, 0);
    for (const std::uint32_t r : support(i)) {
        out[r] = 1;
    }
    return out;
}

std::size_t MappingMatrix::column_weight(std::size_t i) const { return support(i).size(); }

MappingMatrix MappingMatrix::materialize(std::uint64_t budget_bits) const {
    if (is_dense()) {
        return *this;
    }
    const long double cells = static_cast<long double>(m_) * static_cast<long double>(n_);
    if (cells > static_cast<long double>(budget_bits)) {
        throw BudgetExceeded(fmt::format("materializing {}x{} exceeds budget of {} bits", m_, n_, budget_bits));
    }
    const std::size_t wpr = words_for(n_);
    std::vector<std::uint64_t> words(m_ * wpr, 0);
    Support s;
    for (std::size_t c = 0; c < n_; ++c) {
        generator_->support(c, s);
        for (const std::uint32_t r : s) {
            words[r * wpr + c / 64] |= std::uint64_t{1} << (c % 64);
        }
    }
    MappingMatrix dense = dense_from_words(m_, n_, std::move(words));
    dense.spec_ = spec_;
    return dense;
}

bool operator==(const MappingMatrix& a, const MappingMatrix& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_) {
        return false;
    }
    if (a.is_dense() && b.is_dense()) {
        return *a.bits_ == *b.bits_;
    }
    Support sa;
    Support sb;
    for (std::size_t i = 1; i <= a.n_; ++i) {
        a.support(i, sa);
        b.support(i, sb);
        if (sa != sb) {
            return false;
        }
    }
    return true;
}

CounterArray counter_array(const MappingMatrix& matrix, std::span<const std::size_t> elements) {
    CounterArray counts(matrix.rows(), 0);
    Support s;
    for (const std::size_t u : elements) {
        matrix.support(u, s);
        for (const std::uint32_t r : s) {
            ++counts[r];
        }
    }
    return counts;
}

MappingMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty input: missing header");
    }
    std::istringstream header(line);
    std::string magic;
    std::string version;
    std::string layout;
    long long m = 0;
    long long n = 0;
    if (!(header >> magic >> version >> m >> n >> layout) || magic != "IBLTMATRIX" || version != "v1") {
        throw FormatError("malformed header, expected 'IBLTMATRIX v1 <m> <n> <dense|sparse>'");
    }
    std::string extra;
    if (header >> extra) {
        throw FormatError("malformed header: trailing tokens");
    }
    if (m <= 0 || n <= 0) {
        throw FormatError("malformed header: m and n must be positive");
    }
    if (layout != "dense" && layout != "sparse") {
        throw FormatError(fmt::format("malformed header: unknown layout '{}'", layout));
    }
    const bool dense = layout == "dense";
    const std::size_t expected = dense ? static_cast<std::size_t>(m) : static_cast<std::size_t>(n);

    std::vector<std::string> body;
    bool in_comments = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty() && line.front() == '#') {
            in_comments = true;
            continue;
        }
        if (in_comments) {
            if (trim(line).empty()) {
                continue;
            }
            throw FormatError("matrix data after trailing comment lines");
        }
        if (body.size() == expected) {
            if (trim(line).empty()) {
                continue;
            }
            throw FormatError(fmt::format("more than {} data lines", expected));
        }
        body.push_back(line);
    }
    if (body.size() != expected) {
        throw FormatError(fmt::format("expected {} data lines, found {}", expected, body.size()));
    }

    if (dense) {
        for (std::size_t r = 0; r < body.size(); ++r) {
            if (body[r].size() != static_cast<std::size_t>(n)) {
                throw FormatError(
                    fmt::format("row length mismatch: row {} has {} entries, expected {}", r + 1, body[r].size(), n));
            }
        }
        return MappingMatrix::from_rows(std::span<const std::string>(body));
    }

    std::vector<Support> columns(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < body.size(); ++c) {
        std::istringstream tokens(body[c]);
        std::string token;
        long long previous = 0;
        while (tokens >> token) {
            std::size_t used = 0;
            long long r = 0;
            try {
                r = std::stoll(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size() || r < 1 || r > m) {
                throw FormatError(fmt::format("column {}: invalid row index '{}'", c + 1, token));
            }
            if (r <= previous) {
                throw FormatError(fmt::format("column {}: row indices must be strictly increasing", c + 1));
            }
            previous = r;
            columns[c].push_back(static_cast<std::uint32_t>(r - 1));
        }
        if (columns[c].empty()) {
            throw FormatError(fmt::format("column {} is all zero", c + 1));
        }
    }
    return MappingMatrix::from_columns(static_cast<std::size_t>(m), columns);
}

MappingMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open matrix file '{}'", path.string()));
    }
    return read_matrix(in);
}

void write_matrix(const MappingMatrix& matrix, std::ostream& out, MatrixFormat format) {
    const std::size_t m = matrix.rows();
    const std::size_t n = matrix.cols();
    out << "IBLTMATRIX v1 " << m << ' ' << n << ' ' << (format == MatrixFormat::Dense ? "dense" : "sparse") << '\n';
    Support s;
    if (format == MatrixFormat::Sparse) {
        for (std::size_t c = 1; c <= n; ++c) {
            matrix.support(c, s);
            for (std::size_t j = 0; j < s.size(); ++j) {
                out << (j == 0 ? "" : " ") << (s[j] + 1);
            }
            out << '\n';
        }
    } else {
        std::vector<std::string> rows(m, std::string(n, '0'));
        for (std::size_t c = 1; c <= n; ++c) {
            matrix.support(c, s);
            for (const std::uint32_t r : s) {
                rows[r][c - 1] = '1';
            }
        }
        for (const auto& row : rows) {
            out << row << '\n';
        }
    }
    if (matrix.spec()) {
        out << "# " << matrix.spec()->describe() << '\n';
    }
}

void write_matrix(const MappingMatrix& matrix, const std::filesystem::path& path, MatrixFormat format) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write matrix file '{}'", path.string()));
    }
    write_matrix(matrix, out, format);
}

} // namespace lffz
