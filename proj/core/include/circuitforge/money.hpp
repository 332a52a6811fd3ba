#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "circuitforge/decimal.hpp"

namespace circuitforge {

/// Signed amount in hundredths of a currency unit. Two amounts can only be
/// combined when their currency tags are equal; otherwise CurrencyMismatch.
class Money {
 public:
  Money() = default;
  Money(std::int64_t cents, std::string currency) : cents_(cents), currency_(std::move(currency)) {}

  static Money from_cents(std::int64_t cents, std::string currency = {}) { return Money(cents, std::move(currency)); }
  /// "100", "-0.38", "190.38". More than two fractional digits is a ParseError.
  static Money parse(std::string_view text, std::string currency = {});

  std::int64_t cents() const { return cents_; }
  const std::string& currency() const { return currency_; }
  Decimal to_decimal() const { return Decimal::from_micros(cents_ * 10'000); }
  double to_double() const { return static_cast<double>(cents_) / 100.0; }

  bool is_zero() const { return cents_ == 0; }
  bool is_positive() const { return cents_ > 0; }
  bool is_negative() const { return cents_ < 0; }

  /// Always two fractional digits, e.g. "-0.38".
  std::string to_string() const;

  Money operator-() const { return Money(-cents_, currency_); }
  Money operator+(const Money& o) const;
  Money operator-(const Money& o) const;
  Money& operator+=(const Money& o);
  Money& operator-=(const Money& o);

  /// Scales by a fixed-point factor, rounding half away from zero to the cent.
  Money operator*(Decimal factor) const;

  /// Exact ratio in micro-units, rounded half away from zero.
  Decimal ratio(const Money& denominator) const;

  bool operator==(const Money& o) const;
  std::strong_ordering operator<=>(const Money& o) const;

  Money zero_like() const { return Money(0, currency_); }

 private:
  void check(const Money& o) const;

  std::int64_t cents_ = 0;
  std::string currency_;
};

}  // namespace circuitforge
