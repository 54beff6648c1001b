#include "piranha/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace piranha {

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string describe(std::size_t line, std::size_t column, const std::string& reason) {
  std::ostringstream os;
  os << "line " << line;
  if (column > 0) os << ", column " << column;
  os << ": " << reason;
  return os.str();
}

}  // namespace

CsvError::CsvError(ErrorCode code, std::size_t line, std::size_t column, const std::string& reason)
    : Error(code, describe(line, column, reason)), line_(line), column_(column) {}

std::size_t Dataset::resolve_column(std::string_view name) const {
  for (std::size_t k = 0; k < column_names.size(); ++k)
    if (column_names[k] == name) return k;
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  if (ec == std::errc() && ptr == name.data() + name.size() && !name.empty() && index < column_names.size())
    return index;
  throw Error(ErrorCode::UnknownColumn, "no column named '" + std::string(name) + "'");
}

Dataset parse_csv(std::string_view text, std::size_t min_rows) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw CsvError(ErrorCode::ParseError, 1, 0, "empty input, expected a header row");

  Dataset ds;
  const auto header = split_line(lines.front());
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string_view name = header[c];
    if (name.empty()) throw CsvError(ErrorCode::ParseError, 1, c + 1, "empty column name");
    for (const auto& prev : ds.column_names)
      if (prev == name) throw CsvError(ErrorCode::ParseError, 1, c + 1, "duplicate column name '" + std::string(name) + "'");
    ds.column_names.emplace_back(name);
  }
  ds.columns.assign(header.size(), {});

  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t line_no = r + 1;
    const auto cells = split_line(lines[r]);
    if (cells.size() != header.size()) {
      std::ostringstream os;
      os << "expected " << header.size() << " cells, found " << cells.size();
      throw CsvError(ErrorCode::RaggedRow, line_no, 0, os.str());
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string_view cell = trim(cells[c]);
      if (cell.empty() || cell == "NA")
        throw CsvError(ErrorCode::MissingValue, line_no, c + 1, "missing value");
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec == std::errc::result_out_of_range)
        throw CsvError(ErrorCode::MissingValue, line_no, c + 1, "value '" + std::string(cell) + "' is not finite");
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw CsvError(ErrorCode::ParseError, line_no, c + 1, "cannot parse '" + std::string(cell) + "' as a number");
      if (!std::isfinite(value))
        throw CsvError(ErrorCode::MissingValue, line_no, c + 1, "value '" + std::string(cell) + "' is not finite");
      ds.columns[c].push_back(value);
    }
  }
  ds.n = lines.size() - 1;
  if (ds.n < min_rows) {
    std::ostringstream os;
    os << "need at least " << min_rows << " data rows, found " << ds.n;
    throw CsvError(ErrorCode::TooFewRows, lines.size(), 0, os.str());
  }
  return ds;
}

Dataset load_csv(std::istream& in, std::size_t min_rows) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_csv(text, min_rows);
}

Dataset load_csv_file(const std::string& path, std::size_t min_rows) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return load_csv(in, min_rows);
}

}  // namespace piranha
