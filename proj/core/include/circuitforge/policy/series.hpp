#pragma once

#include <string_view>
#include <vector>

#include "circuitforge/date.hpp"
#include "circuitforge/decimal.hpp"

namespace circuitforge::policy {

enum class Unit { CurrencyBillions, CurrencyBillionsPerYear, Months, Percent };

std::string_view to_string(Unit u);
Unit parse_unit(std::string_view s);

struct Point {
  Date date;
  Decimal value;

  bool operator==(const Point&) const = default;
};

/// Dated observations in one unit, strictly increasing by date.
class Series {
 public:
  Series() = default;
  /// Throws InvalidArgument when dates are not strictly increasing.
  Series(Unit unit, std::vector<Point> points);

  Unit unit() const { return unit_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// Middle value, or the mean of the two middle values, half away from zero.
  Decimal median() const;
  Decimal min() const;
  Decimal max() const;

  bool operator==(const Series&) const = default;

 private:
  Unit unit_ = Unit::CurrencyBillions;
  std::vector<Point> points_;
};

}  // namespace circuitforge::policy
