#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace circuitforge {

__extension__ typedef __int128 int128;

/// Fixed-point value with six fractional digits. Used for rates, fractions
/// and series observations where binary floating point would drift.
class Decimal {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Decimal() = default;

  static constexpr Decimal from_micros(std::int64_t micros) {
    Decimal d;
    d.micros_ = micros;
    return d;
  }
  static constexpr Decimal from_int(std::int64_t whole) { return from_micros(whole * kScale); }

  /// Accepts an optional sign, digits and up to six fractional digits.
  /// Extra digits are rounded half away from zero.
  static Decimal parse(std::string_view text);

  /// Nearest representable value, ties away from zero.
  static Decimal from_double(double value);

  constexpr std::int64_t micros() const { return micros_; }
  double to_double() const { return static_cast<double>(micros_) / kScale; }

  /// Fixed notation with `digits` fractional digits (0..6), half away from zero.
  std::string to_string(int digits = 6) const;

  constexpr Decimal operator-() const { return from_micros(-micros_); }
  constexpr Decimal operator+(Decimal o) const { return from_micros(micros_ + o.micros_); }
  constexpr Decimal operator-(Decimal o) const { return from_micros(micros_ - o.micros_); }
  Decimal& operator+=(Decimal o) {
    micros_ += o.micros_;
    return *this;
  }
  Decimal& operator-=(Decimal o) {
    micros_ -= o.micros_;
    return *this;
  }

  /// Product rounded half away from zero to six digits.
  Decimal operator*(Decimal o) const;
  /// Quotient rounded half away from zero; throws on a zero divisor.
  Decimal operator/(Decimal o) const;

  constexpr auto operator<=>(const Decimal&) const = default;

 private:
  std::int64_t micros_ = 0;
};

/// Integer division of a signed 128-bit numerator rounded half away from zero.
std::int64_t div_round_half_up(int128 num, int128 den);

}  // namespace circuitforge
