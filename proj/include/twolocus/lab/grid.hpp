#pragma once

#include <string>
#include <string_view>

#include "twolocus/error.hpp"
#include "twolocus/scalar.hpp"
#include "twolocus/sweep.hpp"

namespace twolocus::lab {

/// Parses `min:max:count` (inclusive endpoints, count >= 1, 0 <= min <= max <= 1).
template <Scalar T>
GridSpec<T> parse_grid(std::string_view text) {
  const std::string original(text);
  auto fail = [&original](const std::string& why) -> Error {
    return Error(ErrorKind::UsageError,
                 "grid '" + original + "' " + why + " (expected min:max:count, e.g. 0:1:11)");
  };
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw fail("is malformed");
  }
  GridSpec<T> grid;
  grid.min = parse_scalar<T>(text.substr(0, first));
  grid.max = parse_scalar<T>(text.substr(first + 1, second - first - 1));
  const std::string count_text(text.substr(second + 1));
  std::size_t used = 0;
  long count = 0;
  try {
    count = std::stol(count_text, &used);
  } catch (const std::exception&) {
    throw fail("has a non-integer count");
  }
  if (used != count_text.size()) throw fail("has a non-integer count");
  if (count < 1) throw fail("needs count >= 1");
  if (grid.max < grid.min) throw fail("needs min <= max");
  if (grid.min < T(0) || T(1) < grid.max) throw fail("must stay within [0,1]");
  grid.count = static_cast<std::size_t>(count);
  return grid;
}

}  // namespace twolocus::lab
