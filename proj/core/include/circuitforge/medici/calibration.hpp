#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circuitforge/money.hpp"

namespace circuitforge::medici {

struct CalibrationTarget {
  std::string period_label;
  int start_year = 0;
  int end_year = 0;
  Money starting_capital;
  Money reported_earnings;
  int years = 0;
};

/// The three reporting periods with founding capital 8,000 florins.
std::vector<CalibrationTarget> canonical_targets();

inline constexpr double kFoundingCapital = 8000.0;

struct Model1Result {
  double multiple = 0;  // 1 + earnings/capital
  double growth = 0;    // multiple^(1/years)
};

/// Throws NonPositiveCapital, InvalidArgument for years <= 0.
Model1Result model1(const Money& capital, const Money& earnings, double years);
double model1_growth(const Money& capital, const Money& earnings, double years);

// The forward models work in double; the Money overloads round the result to the cent.

/// Year loop: profit rate·C, f of it retained into capital, the rest distributed.
double model2_distributions(double capital0, int years, double retention_of_profit, double rate);
Money model2_distributions(const Money& capital0, int years, double retention_of_profit, double rate);
/// Closed form of the same sum.
double model2_distributions_closed(double capital0, int years, double retention_of_profit, double rate);
double model2_end_capital(double capital0, int years, double retention_of_profit, double rate);

/// Income rate·C·(1 + k(1−share)); f·C retained into capital; the rest distributed.
double model3_distributions(double capital0, int years, double retention_of_capital, double deposit_multiple,
                            double depositor_share, double rate);
Money model3_distributions(const Money& capital0, int years, double retention_of_capital, double deposit_multiple,
                           double depositor_share, double rate);
double model3_end_capital(double capital0, int years, double retention_of_capital);

/// Bisection on [0, 5] until the relative residual is below 1e-6. Throws NoBracket.
double model2_required_rate(const CalibrationTarget& target, double retention_of_profit, const Money& capital_in);
double model3_required_rate(const CalibrationTarget& target, double retention_of_capital, double deposit_multiple,
                            double depositor_share, const Money& capital_in);

/// Published required rates (percent), when one exists for the cell.
std::optional<double> reference_model2_pct(int period, double retention);
std::optional<double> reference_model3_pct(int period, double retention, double deposit_multiple);

struct CalibrationCell {
  double retention = 0;
  double deposit_multiple = 0;  // model 3 only
  std::string label;
};

struct CellResult {
  double rate = 0;           // fraction per year
  double capital_in = 0;
  std::optional<double> reference_pct;
  std::optional<double> residual_pct;  // (rate − reference)/reference × 100
  bool flagged = false;                // residual beyond the tolerance, or no reference
};

struct CalibrationReport {
  int model = 2;
  double depositor_share = 0.5;
  double tolerance_pct = 5.0;
  std::vector<CalibrationCell> cells;
  std::vector<CalibrationTarget> periods;
  /// results[period][cell]
  std::vector<std::vector<CellResult>> results;
};

struct CalibrationOptions {
  int model = 2;
  std::vector<double> retentions;        // default: 0.025, 0.05, 0.10
  std::vector<double> deposit_multiples; // model 3, default: 1, 3, 7
  double depositor_share = 0.5;
  double tolerance_pct = 5.0;
  int jobs = 0;
};

/// Solves every (period, cell) pair with capital carried forward through the
/// periods of each cell. Cells run in parallel.
CalibrationReport calibrate(const CalibrationOptions& opt);

}  // namespace circuitforge::medici
