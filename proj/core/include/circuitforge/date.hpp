#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace circuitforge {

/// Proleptic Gregorian calendar date.
class Date {
 public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);
  explicit Date(std::chrono::sys_days days) : days_(days) {}

  /// Strict YYYY-MM-DD.
  static Date parse(std::string_view text);

  int year() const;
  unsigned month() const;
  unsigned day() const;
  std::chrono::sys_days sys_days() const { return days_; }

  Date add_days(long n) const { return Date(days_ + std::chrono::days(n)); }
  /// Days from `other` to this date.
  long days_since(const Date& other) const { return (days_ - other.days_).count(); }

  std::string to_string() const;

  auto operator<=>(const Date&) const = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace circuitforge
