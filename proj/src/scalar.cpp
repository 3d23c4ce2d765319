#include "twolocus/scalar.hpp"

#include <array>
#include <charconv>
#include <system_error>

#include "twolocus/error.hpp"

namespace twolocus {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::UsageError,
              "malformed number '" + std::string(text) +
                  "' (expected a decimal like 0.25 or a fraction like 1/4)");
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) bad_number(text);
  return value;
}

// Exact decimal -> rational: "[-]digits[.digits][e[-]digits]".
Rational parse_decimal_exact(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad_number(text);
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') bad_number(text);
    std::string_view exp_text = s.substr(i + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    long e = 0;
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), e);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) {
      bad_number(text);
    }
    exponent += e;
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

template <>
double parse_scalar<double>(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    double num = parse_double(trim(text.substr(0, slash)));
    double den = parse_double(trim(text.substr(slash + 1)));
    if (den == 0.0) bad_number(text);
    return num / den;
  }
  return parse_double(text);
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal_exact(trim(text.substr(0, slash)));
    Rational den = parse_decimal_exact(trim(text.substr(slash + 1)));
    if (den == 0) bad_number(text);
    return Rational(num / den);
  }
  return parse_decimal_exact(text);
}

std::string format_scalar(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf.data(), ptr);
}

std::string format_scalar(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace twolocus
