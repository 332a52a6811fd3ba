#include "circuitforge/dataio/csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "circuitforge/error.hpp"

namespace circuitforge::dataio {

namespace {

bool needs_quotes(std::string_view s) { return s.find_first_of(",\"\r\n") != std::string_view::npos; }

void append_field(std::string& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

bool cell_matches(const Cell& c, CellType t) {
  switch (t) {
    case CellType::Text: return std::holds_alternative<std::string>(c);
    case CellType::Integer: return std::holds_alternative<std::int64_t>(c);
    case CellType::Decimal: return std::holds_alternative<Decimal>(c);
    case CellType::Date: return std::holds_alternative<Date>(c);
  }
  return false;
}

}  // namespace

std::vector<std::string> TableDocument::headers() const {
  std::vector<std::string> h;
  for (const auto& c : columns) h.push_back(c.name);
  return h;
}

void TableDocument::validate() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size())
      throw Error(Errc::InvalidArgument, name + ": row " + std::to_string(r + 1) + " has " +
                                             std::to_string(rows[r].size()) + " cells, expected " +
                                             std::to_string(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (!cell_matches(rows[r][c], columns[c].type))
        throw Error(Errc::InvalidArgument, name + ": row " + std::to_string(r + 1) + " column '" +
                                               columns[c].name + "' has the wrong cell type");
  }
}

bool TableDocument::operator==(const TableDocument& o) const {
  if (headers() != o.headers() || rows.size() != o.rows.size()) return false;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r] != o.rows[r]) return false;
  return true;
}

std::string format_cell(const Cell& cell, const ColumnSpec& col) {
  if (auto* s = std::get_if<std::string>(&cell)) return *s;
  if (auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (auto* d = std::get_if<Decimal>(&cell)) return d->to_string(col.precision);
  return std::get<Date>(cell).to_string();
}

Cell parse_cell(std::string_view text, const ColumnSpec& col) {
  switch (col.type) {
    case CellType::Text: return std::string(text);
    case CellType::Integer: {
      std::int64_t v = 0;
      std::size_t i = 0;
      bool neg = false;
      if (!text.empty() && text[0] == '-') {
        neg = true;
        i = 1;
      }
      if (i == text.size()) throw Error(Errc::ParseError, "bad integer '" + std::string(text) + "'");
      for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') throw Error(Errc::ParseError, "bad integer '" + std::string(text) + "'");
        v = v * 10 + (text[i] - '0');
      }
      return neg ? -v : v;
    }
    case CellType::Decimal: return Decimal::parse(text);
    case CellType::Date: return Date::parse(text);
  }
  return std::string(text);
}

std::string to_csv(const TableDocument& doc) {
  doc.validate();
  std::string out;
  for (std::size_t c = 0; c < doc.columns.size(); ++c) {
    if (c) out += ',';
    append_field(out, doc.columns[c].name);
  }
  out += '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      append_field(out, format_cell(row[c], doc.columns[c]));
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoFailure, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error(Errc::IoFailure, "write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_table(const TableDocument& doc, const std::string& path) { write_text(path, to_csv(doc)); }

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (n >= 3 && static_cast<unsigned char>(text[0]) == 0xEF && static_cast<unsigned char>(text[1]) == 0xBB &&
      static_cast<unsigned char>(text[2]) == 0xBF)
    i = 3;
  bool field_started = false;
  auto end_record = [&] {
    rec.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(rec));
    rec.clear();
    field_started = false;
  };
  while (i < n) {
    char c = text[i];
    if (c == '"' && !field_started && field.empty()) {
      const std::size_t start_line = line;
      ++i;
      for (;;) {
        if (i >= n) throw Error(Errc::UnparsableRow, "line " + std::to_string(start_line) + ": unterminated quote");
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (text[i] == '\n') ++line;
        field += text[i++];
      }
      field_started = true;
      if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
        throw Error(Errc::UnparsableRow, "line " + std::to_string(line) + ": text after closing quote");
      continue;
    }
    if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      field_started = false;
      ++i;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
      ++i;
      end_record();
      ++line;
    } else {
      if (c == '"') throw Error(Errc::UnparsableRow, "line " + std::to_string(line) + ": stray quote");
      field += c;
      field_started = true;
      ++i;
    }
  }
  if (field_started || !field.empty() || !rec.empty()) end_record();
  return records;
}

TableDocument parse_table(std::string_view text, const std::vector<ColumnSpec>& columns, std::string name) {
  const auto records = parse_csv(text);
  if (records.empty()) throw Error(Errc::MalformedHeader, "missing header");
  TableDocument doc{std::move(name), columns, {}};
  if (records[0] != doc.headers()) {
    std::string got;
    for (const auto& h : records[0]) got += (got.empty() ? "" : ",") + h;
    throw Error(Errc::MalformedHeader, "unexpected header '" + got + "'");
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != columns.size())
      throw Error(Errc::UnparsableRow, "line " + std::to_string(r + 1) + ": expected " +
                                           std::to_string(columns.size()) + " fields");
    std::vector<Cell> row;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      try {
        row.push_back(parse_cell(records[r][c], columns[c]));
      } catch (const Error& e) {
        throw Error(Errc::UnparsableRow, "line " + std::to_string(r + 1) + ": " + e.what());
      }
    }
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

TableDocument read_table(const std::string& path, const std::vector<ColumnSpec>& columns) {
  return parse_table(read_text(path), columns, path);
}

SeriesRead parse_series(std::string_view text, policy::Unit unit) {
  std::vector<std::vector<std::string>> records;
  records = parse_csv(text);
  if (records.empty()) throw Error(Errc::MalformedHeader, "missing header");
  const auto& h = records[0];
  auto upper = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
    return s;
  };
  if (h.size() != 2 || (upper(h[0]) != "DATE" && h[0] != "observation_date") || h[1].empty())
    throw Error(Errc::MalformedHeader, "expected 'DATE,<value>' header");

  struct Row {
    Date date;
    Decimal value;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::size_t skipped = 0;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t line = r + 1;
    if (rec.size() == 1 && rec[0].empty()) continue;  // blank line
    if (rec.size() != 2) throw Error(Errc::UnparsableRow, "line " + std::to_string(line) + ": expected 2 fields");
    Date d;
    try {
      d = Date::parse(rec[0]);
    } catch (const Error&) {
      throw Error(Errc::UnparsableRow, "line " + std::to_string(line) + ": bad date '" + rec[0] + "'");
    }
    if (rec[1].empty() || rec[1] == ".") {
      ++skipped;
      continue;
    }
    try {
      rows.push_back({d, Decimal::parse(rec[1]), line});
    } catch (const Error&) {
      throw Error(Errc::UnparsableRow, "line " + std::to_string(line) + ": bad value '" + rec[1] + "'");
    }
  }
  if (rows.empty()) throw Error(Errc::EmptySeries, "no observations");
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
  std::vector<policy::Point> pts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i && rows[i].date == rows[i - 1].date)
      throw Error(Errc::UnparsableRow, "line " + std::to_string(rows[i].line) + ": duplicate date " +
                                           rows[i].date.to_string());
    pts.push_back({rows[i].date, rows[i].value});
  }
  return {policy::Series(unit, std::move(pts)), skipped};
}

SeriesRead read_series(const std::string& path, policy::Unit unit) { return parse_series(read_text(path), unit); }

std::string series_to_csv(const policy::Series& s, const std::string& value_name, int precision) {
  TableDocument doc{value_name, {{"DATE", CellType::Date}, {value_name, CellType::Decimal, precision}}, {}};
  for (const auto& p : s.points()) doc.rows.push_back({p.date, p.value});
  return to_csv(doc);
}

}  // namespace circuitforge::dataio
