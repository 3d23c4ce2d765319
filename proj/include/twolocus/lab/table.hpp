#pragma once

// Mode-independent result table and its CSV / JSON serializations.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "twolocus/scalar.hpp"

namespace twolocus::lab {

/// One table cell.  Scalars keep their backend type so each format can
/// render them natively: doubles as shortest round-trip decimals, rationals
/// as "p/q" strings.
using Cell = std::variant<double, Rational, std::size_t, bool, std::string>;

struct Column {
  std::string csv_name;
  std::string json_name;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Writes `contents` to `path`; throws Error(IoError) on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace twolocus::lab
