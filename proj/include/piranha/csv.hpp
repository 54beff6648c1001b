#pragma once

// Fixed CSV dialect: UTF-8, header row, comma separator, '.' decimal point,
// no quoting. Spaces and tabs around a numeric cell are ignored. Empty cells,
// NA and non-finite values are reported as missing.

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "piranha/error.hpp"

namespace piranha {

struct Dataset {
  std::size_t n = 0;
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> columns;

  /// Index of the column called `name`; if no column has that name and
  /// `name` is a decimal integer, it is taken as a 0-based index.
  std::size_t resolve_column(std::string_view name) const;
};

class CsvError : public Error {
 public:
  CsvError(ErrorCode code, std::size_t line, std::size_t column, const std::string& reason);

  std::size_t line() const noexcept { return line_; }      // 1-based, header is line 1
  std::size_t column() const noexcept { return column_; }  // 1-based, 0 when not cell-specific

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Throws TooFewRows below `min_rows` data rows.
Dataset parse_csv(std::string_view text, std::size_t min_rows = 3);
Dataset load_csv(std::istream& in, std::size_t min_rows = 3);
Dataset load_csv_file(const std::string& path, std::size_t min_rows = 3);

}  // namespace piranha
