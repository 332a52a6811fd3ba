#include "circuitforge/medici/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/error.hpp"

namespace circuitforge::medici {

namespace {

void require_nonempty(const LoanDataset& ds) {
  if (ds.records.empty()) throw Error(Errc::EmptyDataset, "dataset has no records");
  for (const auto& r : ds.records) r.validate();
}

const std::vector<dataio::ColumnSpec>& loan_columns() {
  static const std::vector<dataio::ColumnSpec> cols = {{"id", dataio::CellType::Text},
                                                       {"start_date", dataio::CellType::Date},
                                                       {"end_date", dataio::CellType::Date},
                                                       {"nominal_annual_rate_pct", dataio::CellType::Decimal, 2}};
  return cols;
}

}  // namespace

void LoanRecord::validate() const {
  if (!(start_date < end_date))
    throw Error(Errc::InvalidRecord, id + ": end date " + end_date.to_string() + " is not after start date");
  const long d = duration_days();
  if (d < 30 || d > 200) throw Error(Errc::InvalidRecord, id + ": duration " + std::to_string(d) + " outside 30..200 days");
  if (nominal_annual_rate < Decimal{}) throw Error(Errc::InvalidRecord, id + ": negative rate");
}

Season season_of(unsigned month) {
  if (month < 1 || month > 12) throw Error(Errc::InvalidArgument, "month out of range");
  if (month == 12 || month <= 2) return Winter;
  if (month <= 5) return Spring;
  if (month <= 8) return Summer;
  return Fall;
}

DatasetSummary reference_summary() {
  DatasetSummary s;
  s.bucket_counts = {39, 9, 5};
  s.seasonality.starts = {15, 11, 13, 14};
  s.seasonality.ends = {18, 9, 12, 14};
  s.monthly_coincidence = {16, 13, 11, 5, 5, 10, 10, 12, 12, 8, 9, 13};
  s.mean_nominal_rate = Decimal::parse("0.1507");
  s.utilization = utilization(s.monthly_coincidence);
  s.effective_yield = effective_yield(s.utilization, s.mean_nominal_rate);
  return s;
}

Decimal transaction_yield(const LoanRecord& rec, int day_basis) {
  rec.validate();
  return Decimal::from_micros(
      div_round_half_up(static_cast<int128>(rec.nominal_annual_rate.micros()) * rec.duration_days(), day_basis));
}

int duration_bucket(long days) {
  if (days <= kBucketUpper[0]) return 0;
  if (days <= kBucketUpper[1]) return 1;
  return 2;
}

BucketCounts duration_buckets(const LoanDataset& ds) {
  require_nonempty(ds);
  BucketCounts c{};
  for (const auto& r : ds.records) ++c[static_cast<std::size_t>(duration_bucket(r.duration_days()))];
  return c;
}

Seasonality seasonality(const LoanDataset& ds) {
  require_nonempty(ds);
  Seasonality s;
  for (const auto& r : ds.records) {
    ++s.starts[season_of(r.start_date.month())];
    ++s.ends[season_of(r.end_date.month())];
  }
  return s;
}

MonthCounts monthly_coincidence(const LoanDataset& ds) {
  require_nonempty(ds);
  MonthCounts c{};
  for (const auto& r : ds.records) {
    std::set<unsigned> touched;
    int y = r.start_date.year();
    unsigned m = r.start_date.month();
    const int ey = r.end_date.year();
    const unsigned em = r.end_date.month();
    for (;;) {
      touched.insert(m);
      if (y == ey && m == em) break;
      if (++m == 13) {
        m = 1;
        ++y;
      }
    }
    for (unsigned mm : touched) ++c[mm - 1];
  }
  return c;
}

Decimal utilization(const MonthCounts& counts) {
  const int mx = *std::max_element(counts.begin(), counts.end());
  if (mx <= 0) throw Error(Errc::AllZero, "monthly counts are all zero");
  for (int v : counts)
    if (v < 0) throw Error(Errc::InvalidArgument, "negative monthly count");
  const long sum = std::accumulate(counts.begin(), counts.end(), 0L);
  return Decimal::from_micros(div_round_half_up(static_cast<int128>(sum) * Decimal::kScale, 12L * mx));
}

Decimal effective_yield(Decimal u, Decimal mean_rate) {
  if (u < Decimal{} || mean_rate < Decimal{}) throw Error(Errc::InvalidArgument, "negative utilization or rate");
  return u * mean_rate;
}

Decimal mean_nominal_rate(const LoanDataset& ds) {
  require_nonempty(ds);
  int128 sum = 0;
  for (const auto& r : ds.records) sum += r.nominal_annual_rate.micros();
  return Decimal::from_micros(div_round_half_up(sum, static_cast<int128>(ds.records.size())));
}

DatasetSummary summarize(const LoanDataset& ds) {
  DatasetSummary s;
  s.bucket_counts = duration_buckets(ds);
  s.seasonality = seasonality(ds);
  s.monthly_coincidence = monthly_coincidence(ds);
  s.mean_nominal_rate = mean_nominal_rate(ds);
  s.utilization = utilization(s.monthly_coincidence);
  s.effective_yield = effective_yield(s.utilization, s.mean_nominal_rate);
  return s;
}

std::string loans_to_csv(const LoanDataset& ds) {
  dataio::TableDocument doc{"loans", loan_columns(), {}};
  for (const auto& r : ds.records)
    doc.rows.push_back({r.id, r.start_date, r.end_date, r.nominal_annual_rate * Decimal::from_int(100)});
  return dataio::to_csv(doc);
}

LoanDataset parse_loans_csv(std::string_view text) {
  const auto doc = dataio::parse_table(text, loan_columns(), "loans");
  LoanDataset ds;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const auto& row = doc.rows[i];
    LoanRecord r{std::get<std::string>(row[0]), std::get<Date>(row[1]), std::get<Date>(row[2]),
                 std::get<Decimal>(row[3]) / Decimal::from_int(100)};
    if (!ids.insert(r.id).second) throw Error(Errc::InvalidRecord, "duplicate id " + r.id + " on line " + std::to_string(i + 2));
    r.validate();
    ds.records.push_back(std::move(r));
  }
  if (ds.records.empty()) throw Error(Errc::EmptyDataset, "no loan records");
  return ds;
}

LoanDataset read_loans(const std::string& path) { return parse_loans_csv(dataio::read_text(path)); }

}  // namespace circuitforge::medici
