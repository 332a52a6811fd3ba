#include "circuitforge/medici/calibration.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "circuitforge/error.hpp"

namespace circuitforge::medici {

namespace {

constexpr double kRateHi = 5.0;
constexpr int kIterations = 200;
constexpr double kRelTol = 1e-6;

Money to_money(double v, const std::string& currency) { return Money(std::llround(v * 100.0), currency); }

void check_common(double capital0, int years, double f) {
  if (capital0 < 0 || years < 0) throw Error(Errc::InvalidArgument, "capital and years must be non-negative");
  if (f < 0 || f >= 1) throw Error(Errc::InvalidArgument, "retention must be in [0, 1)");
}

double solve(const std::function<double(double)>& forward, double target, const std::string& what) {
  if (target == 0 && forward(0) == 0) return 0;
  const double lo_val = forward(0);
  if (lo_val > target) throw Error(Errc::NoBracket, what + ": distributions at rate 0 already exceed the target");
  if (forward(kRateHi) < target) throw Error(Errc::NoBracket, what + ": distributions at rate 5 stay below the target");
  double lo = 0, hi = kRateHi;
  for (int i = 0; i < kIterations && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (forward(mid) < target ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  const double scale = std::max(std::fabs(target), 1.0);
  if (std::fabs(forward(r) - target) / scale > kRelTol)
    throw Error(Errc::NoBracket, what + ": bisection did not converge");
  return r;
}

struct RefRow {
  double f;
  double p[3];
};

// Published required rates in percent, rows = periods.
constexpr RefRow kTable2[] = {{0.025, {72.66, 91.13, 99.82}}, {0.05, {63.90, 64.85, 63.09}}, {0.10, {51.11, 40.69, 36.11}}};

struct Ref3 {
  double f;
  double k;
  double p[3];
};

constexpr Ref3 kTable3[] = {
    {0.025, 1, {45.62, 53.04, 55.72}}, {0.025, 3, {27.19, 31.61, 33.21}}, {0.025, 7, {12.35, 14.35, 15.08}},
    {0.05, 1, {46.25, 53.50, 55.72}},  {0.05, 3, {27.37, 31.66, 32.98}},  {0.05, 7, {12.42, 14.37, 14.96}},
    {0.10, 1, {39.68, 36.29, 33.79}},  {0.10, 3, {23.14, 21.17, 19.71}},  {0.10, 7, {10.48, 9.59, 8.93}},
};

bool near(double a, double b) { return std::fabs(a - b) < 1e-9; }

std::string pct_label(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", f * 100);
  return buf;
}

}  // namespace

std::vector<CalibrationTarget> canonical_targets() {
  const std::string cur = "F";
  return {{"1397-1420", 1397, 1420, Money(800000, cur), Money(15282000, cur), 23},
          {"1420-1435", 1420, 1435, Money(800000, cur), Money(18638200, cur), 15},
          {"1435-1450", 1435, 1450, Money(800000, cur), Money(29079100, cur), 15}};
}

Model1Result model1(const Money& capital, const Money& earnings, double years) {
  if (!capital.is_positive()) throw Error(Errc::NonPositiveCapital, "capital must be positive");
  if (!(years > 0)) throw Error(Errc::InvalidArgument, "years must be positive");
  const double m = 1.0 + earnings.to_double() / capital.to_double();
  return {m, std::pow(m, 1.0 / years)};
}

double model1_growth(const Money& capital, const Money& earnings, double years) {
  return model1(capital, earnings, years).growth;
}

double model2_distributions(double c, int years, double f, double r) {
  check_common(c, years, f);
  double total = 0;
  for (int t = 0; t < years; ++t) {
    const double profit = r * c;
    total += (1 - f) * profit;
    c += f * profit;
  }
  return total;
}

Money model2_distributions(const Money& capital0, int years, double f, double r) {
  return to_money(model2_distributions(capital0.to_double(), years, f, r), capital0.currency());
}

double model2_distributions_closed(double c, int years, double f, double r) {
  check_common(c, years, f);
  const double g = f * r;
  if (g == 0) return (1 - f) * r * c * years;
  return (1 - f) * r * c * std::expm1(years * std::log1p(g)) / g;
}

double model2_end_capital(double c, int years, double f, double r) { return c * std::pow(1 + f * r, years); }

double model3_distributions(double c, int years, double f, double k, double share, double r) {
  check_common(c, years, f);
  if (k < 0) throw Error(Errc::InvalidArgument, "deposit multiple must be non-negative");
  if (share < 0 || share > 1) throw Error(Errc::InvalidArgument, "depositor share must be in [0, 1]");
  double total = 0;
  for (int t = 0; t < years; ++t) {
    const double income = r * c * (1 + k * (1 - share));
    const double retained = f * c;
    total += income - retained;
    c += retained;
  }
  return total;
}

Money model3_distributions(const Money& capital0, int years, double f, double k, double share, double r) {
  return to_money(model3_distributions(capital0.to_double(), years, f, k, share, r), capital0.currency());
}

double model3_end_capital(double c, int years, double f) { return c * std::pow(1 + f, years); }

double model2_required_rate(const CalibrationTarget& t, double f, const Money& capital_in) {
  if (!capital_in.is_positive()) throw Error(Errc::NonPositiveCapital, t.period_label);
  const double c = capital_in.to_double();
  return solve([&](double r) { return model2_distributions(c, t.years, f, r); }, t.reported_earnings.to_double(),
               "model 2 " + t.period_label);
}

double model3_required_rate(const CalibrationTarget& t, double f, double k, double share, const Money& capital_in) {
  if (!capital_in.is_positive()) throw Error(Errc::NonPositiveCapital, t.period_label);
  const double c = capital_in.to_double();
  return solve([&](double r) { return model3_distributions(c, t.years, f, k, share, r); },
               t.reported_earnings.to_double(), "model 3 " + t.period_label);
}

std::optional<double> reference_model2_pct(int period, double f) {
  if (period < 0 || period > 2) return std::nullopt;
  for (const auto& row : kTable2)
    if (near(row.f, f)) return row.p[period];
  return std::nullopt;
}

std::optional<double> reference_model3_pct(int period, double f, double k) {
  if (period < 0 || period > 2) return std::nullopt;
  for (const auto& row : kTable3)
    if (near(row.f, f) && near(row.k, k)) return row.p[period];
  return std::nullopt;
}

CalibrationReport calibrate(const CalibrationOptions& opt) {
  if (opt.model != 2 && opt.model != 3) throw Error(Errc::InvalidArgument, "calibration covers models 2 and 3");
  CalibrationReport rep;
  rep.model = opt.model;
  rep.depositor_share = opt.depositor_share;
  rep.tolerance_pct = opt.tolerance_pct;
  rep.periods = canonical_targets();

  std::vector<double> fs = opt.retentions;
  if (fs.empty()) fs = opt.model == 2 ? std::vector<double>{0.025, 0.05, 0.10} : std::vector<double>{0.025};
  std::vector<double> ks = opt.deposit_multiples;
  if (ks.empty()) ks = {1, 3, 7};
  for (double f : fs) {
    if (opt.model == 2) {
      rep.cells.push_back({f, 0, "f=" + pct_label(f)});
    } else {
      for (double k : ks) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "f=%s k=%g", pct_label(f).c_str(), k);
        rep.cells.push_back({f, k, buf});
      }
    }
  }

  const std::size_t np = rep.periods.size();
  const std::size_t nc = rep.cells.size();
  rep.results.assign(np, std::vector<CellResult>(nc));
  auto run_cell = [&](std::size_t c) {
    const auto& cell = rep.cells[c];
    double capital = kFoundingCapital;
    for (std::size_t p = 0; p < np; ++p) {
      const auto& t = rep.periods[p];
      CellResult& out = rep.results[p][c];
      out.capital_in = capital;
      const Money cap(std::llround(capital * 100), t.reported_earnings.currency());
      if (opt.model == 2) {
        out.rate = model2_required_rate(t, cell.retention, cap);
        capital = model2_end_capital(capital, t.years, cell.retention, out.rate);
        out.reference_pct = reference_model2_pct(static_cast<int>(p), cell.retention);
      } else {
        out.rate = model3_required_rate(t, cell.retention, cell.deposit_multiple, opt.depositor_share, cap);
        capital = model3_end_capital(capital, t.years, cell.retention);
        if (std::fabs(opt.depositor_share - 0.5) < 1e-12)
          out.reference_pct = reference_model3_pct(static_cast<int>(p), cell.retention, cell.deposit_multiple);
      }
      if (out.reference_pct) out.residual_pct = (out.rate * 100 - *out.reference_pct) / *out.reference_pct * 100;
      out.flagged = !out.residual_pct || std::fabs(*out.residual_pct) > opt.tolerance_pct;
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t jobs = opt.jobs > 0 ? static_cast<std::size_t>(opt.jobs) : hw;
  std::vector<std::exception_ptr> errors(nc);
  for (std::size_t start = 0; start < nc; start += jobs) {
    std::vector<std::thread> workers;
    for (std::size_t c = start; c < std::min(nc, start + jobs); ++c)
      workers.emplace_back([&, c] {
        try {
          run_cell(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    for (auto& w : workers) w.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rep;
}

}  // namespace circuitforge::medici
