#pragma once

// Tabular output. CSV layout:
//
//   # meta: key=value key=value ...
//   col_a,col_b,...
//   1.2345678901234567,FavorsSymmetric,...
//
// Doubles use 17 significant digits in the C locale, so every finite value
// parses back bit-exactly.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ppscat::io {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double value);

/// Throws std::invalid_argument if a row width differs from the header.
std::string emit_csv(const Table& table);

/// Inverse of emit_csv. Cells that parse fully as numbers come back as double.
Table parse_csv(std::string_view text);

std::string emit_json(const Table& table);

}  // namespace ppscat::io
