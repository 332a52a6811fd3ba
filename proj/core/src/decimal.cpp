#include "circuitforge/decimal.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "circuitforge/error.hpp"

namespace circuitforge {

std::int64_t div_round_half_up(int128 num, int128 den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const bool neg = num < 0;
  int128 a = neg ? -num : num;
  int128 q = a / den;
  if ((a % den) * 2 >= den) ++q;
  if (q > std::numeric_limits<std::int64_t>::max()) throw Error(Errc::InvalidArgument, "fixed-point overflow");
  return static_cast<std::int64_t>(neg ? -q : q);
}

Decimal Decimal::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) throw Error(Errc::ParseError, "empty decimal");
  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  int128 whole = 0;
  int128 frac = 0;
  int frac_digits = 0;
  bool seen_digit = false;
  bool in_frac = false;
  bool round_up = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.') {
      if (in_frac) throw Error(Errc::ParseError, "bad decimal '" + std::string(text) + "'");
      in_frac = true;
      continue;
    }
    if (c < '0' || c > '9') throw Error(Errc::ParseError, "bad decimal '" + std::string(text) + "'");
    seen_digit = true;
    if (!in_frac) {
      whole = whole * 10 + (c - '0');
      if (whole > std::numeric_limits<std::int64_t>::max() / kScale)
        throw Error(Errc::ParseError, "decimal out of range '" + std::string(text) + "'");
    } else if (frac_digits < 6) {
      frac = frac * 10 + (c - '0');
      ++frac_digits;
    } else if (frac_digits == 6) {
      round_up = c >= '5';
      ++frac_digits;
    }
  }
  if (!seen_digit) throw Error(Errc::ParseError, "bad decimal '" + std::string(text) + "'");
  for (int i = std::min(frac_digits, 6); i < 6; ++i) frac *= 10;
  int128 v = whole * kScale + frac + (round_up ? 1 : 0);
  return from_micros(static_cast<std::int64_t>(neg ? -v : v));
}

Decimal Decimal::from_double(double value) {
  if (!std::isfinite(value)) throw Error(Errc::InvalidArgument, "non-finite decimal");
  return from_micros(static_cast<std::int64_t>(std::llround(value * kScale)));
}

std::string Decimal::to_string(int digits) const {
  if (digits < 0 || digits > 6) throw Error(Errc::InvalidArgument, "precision out of range");
  std::int64_t div = 1;
  for (int i = digits; i < 6; ++i) div *= 10;
  const std::int64_t scaled = div_round_half_up(micros_, div);
  const bool neg = scaled < 0;
  const std::uint64_t a = neg ? static_cast<std::uint64_t>(-scaled) : static_cast<std::uint64_t>(scaled);
  std::uint64_t unit = 1;
  for (int i = 0; i < digits; ++i) unit *= 10;
  std::string out = neg ? "-" : "";
  out += std::to_string(a / unit);
  if (digits > 0) {
    std::string f = std::to_string(a % unit);
    out += '.';
    out.append(static_cast<std::size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

Decimal Decimal::operator*(Decimal o) const {
  return from_micros(div_round_half_up(static_cast<int128>(micros_) * o.micros_, kScale));
}

Decimal Decimal::operator/(Decimal o) const {
  if (o.micros_ == 0) throw Error(Errc::InvalidArgument, "decimal division by zero");
  return from_micros(div_round_half_up(static_cast<int128>(micros_) * kScale, o.micros_));
}

}  // namespace circuitforge
