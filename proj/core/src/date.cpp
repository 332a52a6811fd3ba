#include "circuitforge/date.hpp"

#include <cstdio>

#include "circuitforge/error.hpp"

namespace circuitforge {

namespace chr = std::chrono;

Date::Date(int y, unsigned m, unsigned d) {
  const chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{d}};
  if (!ymd.ok()) throw Error(Errc::ParseError, "invalid calendar date");
  days_ = chr::sys_days{ymd};
}

Date Date::parse(std::string_view text) {
  auto bad = [&] { return Error(Errc::ParseError, "bad date '" + std::string(text) + "', expected YYYY-MM-DD"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  auto num = [&](std::size_t from, std::size_t len) {
    int v = 0;
    for (std::size_t i = from; i < from + len; ++i) {
      if (text[i] < '0' || text[i] > '9') throw bad();
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  const int y = num(0, 4);
  const int m = num(5, 2);
  const int d = num(8, 2);
  const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw bad();
  return Date(chr::sys_days{ymd});
}

int Date::year() const { return int(chr::year_month_day{days_}.year()); }
unsigned Date::month() const { return unsigned(chr::year_month_day{days_}.month()); }
unsigned Date::day() const { return unsigned(chr::year_month_day{days_}.day()); }

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

}  // namespace circuitforge
