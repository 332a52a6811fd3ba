#include "circuitforge/policy/series.hpp"

#include <algorithm>

#include "circuitforge/error.hpp"

namespace circuitforge::policy {

std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::CurrencyBillions: return "currency-billions";
    case Unit::CurrencyBillionsPerYear: return "currency-billions/year";
    case Unit::Months: return "months";
    case Unit::Percent: return "percent";
  }
  return "?";
}

Unit parse_unit(std::string_view s) {
  for (Unit u : {Unit::CurrencyBillions, Unit::CurrencyBillionsPerYear, Unit::Months, Unit::Percent})
    if (to_string(u) == s) return u;
  throw Error(Errc::InvalidArgument, "unknown unit '" + std::string(s) + "'");
}

Series::Series(Unit unit, std::vector<Point> points) : unit_(unit), points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1].date < points_[i].date))
      throw Error(Errc::InvalidArgument, "series dates not strictly increasing at " + points_[i].date.to_string());
}

Decimal Series::median() const {
  if (points_.empty()) throw Error(Errc::EmptySeries, "median of empty series");
  std::vector<Decimal> v;
  v.reserve(points_.size());
  for (const auto& p : points_) v.push_back(p.value);
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return Decimal::from_micros(div_round_half_up(static_cast<int128>(v[n / 2 - 1].micros()) + v[n / 2].micros(), 2));
}

Decimal Series::min() const {
  if (points_.empty()) throw Error(Errc::EmptySeries, "min of empty series");
  return std::min_element(points_.begin(), points_.end(), [](auto& a, auto& b) { return a.value < b.value; })->value;
}

Decimal Series::max() const {
  if (points_.empty()) throw Error(Errc::EmptySeries, "max of empty series");
  return std::max_element(points_.begin(), points_.end(), [](auto& a, auto& b) { return a.value < b.value; })->value;
}

}  // namespace circuitforge::policy
