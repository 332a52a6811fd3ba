#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "circuitforge/date.hpp"
#include "circuitforge/decimal.hpp"

namespace circuitforge::medici {

struct LoanRecord {
  std::string id;
  Date start_date;
  Date end_date;
  /// Fraction per year, e.g. 0.1507.
  Decimal nominal_annual_rate;

  long duration_days() const { return end_date.days_since(start_date); }
  /// Throws InvalidRecord unless start < end and the duration is 30..200 days.
  void validate() const;
};

struct LoanDataset {
  std::vector<LoanRecord> records;
};

enum Season { Winter = 0, Spring = 1, Summer = 2, Fall = 3 };

/// Winter is Dec-Feb, Spring Mar-May, Summer Jun-Aug, Fall Sep-Nov. Months 1..12.
Season season_of(unsigned month);

using BucketCounts = std::array<int, 3>;
using MonthCounts = std::array<int, 12>;

struct Seasonality {
  std::array<int, 4> starts{};
  std::array<int, 4> ends{};
};

struct DatasetSummary {
  BucketCounts bucket_counts{};
  Seasonality seasonality;
  MonthCounts monthly_coincidence{};
  Decimal mean_nominal_rate;
  Decimal utilization;
  Decimal effective_yield;
};

/// The published summary of the 53-loan sample.
DatasetSummary reference_summary();

inline constexpr int kBucketUpper[2] = {77, 107};

/// nominal_annual_rate × duration / day_basis.
Decimal transaction_yield(const LoanRecord& rec, int day_basis = 360);

/// 0 for up to 77 days, 1 for 78..107, 2 beyond. Ties at a midpoint go to the lower bucket.
int duration_bucket(long days);
BucketCounts duration_buckets(const LoanDataset& ds);
Seasonality seasonality(const LoanDataset& ds);
/// For each month, the number of loans active during any part of it, all years folded onto one.
MonthCounts monthly_coincidence(const LoanDataset& ds);
/// Σcounts / (12 · max). Throws AllZero.
Decimal utilization(const MonthCounts& counts);
Decimal effective_yield(Decimal utilization, Decimal mean_rate);
Decimal mean_nominal_rate(const LoanDataset& ds);
DatasetSummary summarize(const LoanDataset& ds);

/// Header `id,start_date,end_date,nominal_annual_rate_pct`.
std::string loans_to_csv(const LoanDataset& ds);
LoanDataset parse_loans_csv(std::string_view text);
LoanDataset read_loans(const std::string& path);

}  // namespace circuitforge::medici
