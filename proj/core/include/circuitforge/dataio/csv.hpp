#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "circuitforge/date.hpp"
#include "circuitforge/decimal.hpp"
#include "circuitforge/policy/series.hpp"

namespace circuitforge::dataio {

enum class CellType { Text, Integer, Decimal, Date };

struct ColumnSpec {
  std::string name;
  CellType type = CellType::Text;
  int precision = 2;  // Decimal columns only
};

using Cell = std::variant<std::string, std::int64_t, Decimal, Date>;

struct TableDocument {
  std::string name;
  std::vector<ColumnSpec> columns;
  std::vector<std::vector<Cell>> rows;

  std::vector<std::string> headers() const;
  /// Rectangular, and each cell matches its column type. Throws InvalidArgument.
  void validate() const;
  bool operator==(const TableDocument& o) const;
};

std::string format_cell(const Cell& cell, const ColumnSpec& col);
Cell parse_cell(std::string_view text, const ColumnSpec& col);

/// Comma separated, LF line endings, fields quoted only when they contain a
/// comma, quote, CR or LF.
std::string to_csv(const TableDocument& doc);
/// Throws IoFailure.
void write_table(const TableDocument& doc, const std::string& path);

/// RFC 4180 records. A trailing newline does not produce an empty record.
/// Throws UnparsableRow with the 1-based line of the problem.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Typed read-back. The header must equal the column names (MalformedHeader).
TableDocument parse_table(std::string_view text, const std::vector<ColumnSpec>& columns, std::string name = {});
TableDocument read_table(const std::string& path, const std::vector<ColumnSpec>& columns);

struct SeriesRead {
  policy::Series series;
  /// Rows whose value was "." or empty.
  std::size_t skipped = 0;
};

/// Two-column `DATE,<name>` file as exported by FRED. Rows are sorted by date
/// (stable); a repeated date is an UnparsableRow.
SeriesRead parse_series(std::string_view text, policy::Unit unit);
SeriesRead read_series(const std::string& path, policy::Unit unit);

/// Writes a series in the same two-column layout.
std::string series_to_csv(const policy::Series& s, const std::string& value_name, int precision);

void write_text(const std::string& path, std::string_view content);
std::string read_text(const std::string& path);

}  // namespace circuitforge::dataio
