#include <gtest/gtest.h>

#include <numeric>

#include "circuitforge/error.hpp"
#include "circuitforge/medici/dataset.hpp"

using namespace circuitforge;
using namespace circuitforge::medici;

namespace {

LoanRecord rec(const std::string& id, const char* start, const char* end, const char* rate) {
  return {id, Date::parse(start), Date::parse(end), Decimal::parse(rate)};
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(MediciDataset, TransactionYieldIsSimpleOn360Days) {
  // 0.18 for 90 days is 4.5%.
  EXPECT_EQ(transaction_yield(rec("a", "1435-01-01", "1435-04-01", "0.18")).micros(), 45000);
  EXPECT_EQ(transaction_yield(rec("a", "1435-01-01", "1435-04-01", "0.18"), 365).micros(),
            div_round_half_up(180000 * 90, 365));
}

TEST(MediciDataset, RecordValidation) {
  EXPECT_EQ(code_of([] { rec("a", "1435-01-01", "1435-01-20", "0.1").validate(); }), Errc::InvalidRecord);
  EXPECT_EQ(code_of([] { rec("a", "1435-03-01", "1435-01-01", "0.1").validate(); }), Errc::InvalidRecord);
  EXPECT_EQ(code_of([] { rec("a", "1435-01-01", "1435-09-01", "0.1").validate(); }), Errc::InvalidRecord);
  EXPECT_NO_THROW(rec("a", "1435-01-01", "1435-01-31", "0.1").validate());
}

TEST(MediciDataset, BucketBoundariesSplitBetweenTenors) {
  EXPECT_EQ(duration_bucket(30), 0);
  EXPECT_EQ(duration_bucket(77), 0);
  EXPECT_EQ(duration_bucket(78), 1);
  EXPECT_EQ(duration_bucket(107), 1);
  EXPECT_EQ(duration_bucket(108), 2);
  EXPECT_EQ(duration_bucket(200), 2);
}

TEST(MediciDataset, SeasonsByMonth) {
  const Season expect[12] = {Winter, Winter, Spring, Spring, Spring, Summer,
                             Summer, Summer, Fall,   Fall,   Fall,   Winter};
  for (unsigned m = 1; m <= 12; ++m) EXPECT_EQ(season_of(m), expect[m - 1]) << m;
}

TEST(MediciDataset, CoincidenceCountsPartialMonthsAndFoldsYears) {
  LoanDataset ds;
  ds.records.push_back(rec("a", "1435-01-31", "1435-03-02", "0.1"));  // touches Jan, Feb, Mar
  ds.records.push_back(rec("b", "1436-11-15", "1437-01-10", "0.1"));  // Nov, Dec, Jan
  const auto c = monthly_coincidence(ds);
  const MonthCounts expect = {2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1};
  EXPECT_EQ(c, expect);
  const auto s = seasonality(ds);
  EXPECT_EQ(s.starts, (std::array<int, 4>{1, 0, 0, 1}));
  EXPECT_EQ(s.ends, (std::array<int, 4>{1, 1, 0, 0}));
}

TEST(MediciDataset, UtilizationOfThePublishedCounts) {
  const MonthCounts counts = {16, 13, 11, 5, 5, 10, 10, 12, 12, 8, 9, 13};
  const int total = std::accumulate(counts.begin(), counts.end(), 0);
  ASSERT_EQ(total, 124);
  const Decimal u = utilization(counts);
  EXPECT_EQ(u.micros(), div_round_half_up(static_cast<std::int64_t>(total) * 1'000'000, 12 * 16));
  EXPECT_EQ(u.to_string(4), "0.6458");
  EXPECT_EQ(effective_yield(u, Decimal::parse("0.1507")).to_string(4), "0.0973");
  EXPECT_EQ(code_of([] { (void)utilization(MonthCounts{}); }), Errc::AllZero);
}

TEST(MediciDataset, ReferenceSummaryIsConsistent) {
  const auto s = reference_summary();
  EXPECT_EQ(s.bucket_counts, (BucketCounts{39, 9, 5}));
  const int starts = std::accumulate(s.seasonality.starts.begin(), s.seasonality.starts.end(), 0);
  const int ends = std::accumulate(s.seasonality.ends.begin(), s.seasonality.ends.end(), 0);
  EXPECT_EQ(starts, 53);
  EXPECT_EQ(ends, 53);
  EXPECT_EQ(s.mean_nominal_rate.to_string(4), "0.1507");
}

TEST(MediciDataset, EmptyDatasetIsAnError) {
  EXPECT_EQ(code_of([] { (void)duration_buckets({}); }), Errc::EmptyDataset);
  EXPECT_EQ(code_of([] { (void)mean_nominal_rate({}); }), Errc::EmptyDataset);
}

TEST(MediciDataset, CsvRoundTrip) {
  LoanDataset ds;
  ds.records.push_back(rec("M01", "1435-02-03", "1435-05-04", "0.1250"));
  ds.records.push_back(rec("M02", "1440-12-20", "1441-03-01", "0.2075"));
  const std::string text = loans_to_csv(ds);
  EXPECT_EQ(text.substr(0, text.find('\n')), "id,start_date,end_date,nominal_annual_rate_pct");
  const auto back = parse_loans_csv(text);
  ASSERT_EQ(back.records.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.records[i].id, ds.records[i].id);
    EXPECT_EQ(back.records[i].start_date, ds.records[i].start_date);
    EXPECT_EQ(back.records[i].end_date, ds.records[i].end_date);
    EXPECT_EQ(back.records[i].nominal_annual_rate, ds.records[i].nominal_annual_rate);
  }
  EXPECT_EQ(loans_to_csv(back), text);
}

TEST(MediciDataset, CsvRejectsBadRows) {
  EXPECT_EQ(code_of([] { (void)parse_loans_csv("id,start_date,end_date,nominal_annual_rate_pct\nx,1435-01-01\n"); }),
            Errc::UnparsableRow);
  EXPECT_EQ(code_of([] { (void)parse_loans_csv("a,b\n"); }), Errc::MalformedHeader);
}
