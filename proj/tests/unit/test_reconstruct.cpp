#include <gtest/gtest.h>

#include "circuitforge/error.hpp"
#include "circuitforge/medici/reconstruct.hpp"

using namespace circuitforge;
using namespace circuitforge::medici;

namespace {

void expect_same_summary(const DatasetSummary& a, const DatasetSummary& b) {
  EXPECT_EQ(a.bucket_counts, b.bucket_counts);
  EXPECT_EQ(a.seasonality.starts, b.seasonality.starts);
  EXPECT_EQ(a.seasonality.ends, b.seasonality.ends);
  EXPECT_EQ(a.monthly_coincidence, b.monthly_coincidence);
  EXPECT_EQ(a.mean_nominal_rate.to_string(4), b.mean_nominal_rate.to_string(4));
}

ReconstructOptions opts(std::uint64_t seed) {
  ReconstructOptions o;
  o.seed = seed;
  o.jobs = 1;
  return o;
}

}  // namespace

TEST(Reconstruct, MeetsThePublishedSummary) {
  const auto target = reference_summary();
  const auto r = reconstruct_dataset(target, opts(1));
  ASSERT_EQ(r.dataset.records.size(), 53u);
  for (const auto& rec : r.dataset.records) {
    EXPECT_NO_THROW(rec.validate());
    EXPECT_GE(rec.nominal_annual_rate, Decimal::parse("0.077"));
    EXPECT_LE(rec.nominal_annual_rate, Decimal::parse("0.288"));
  }
  const auto got = summarize(r.dataset);
  expect_same_summary(got, target);
  EXPECT_NEAR(got.mean_nominal_rate.to_double(), 0.1507, 0.001);
  EXPECT_EQ(got.utilization.to_string(4), "0.6458");
}

TEST(Reconstruct, DifferentSeedsGiveTheSameSummary) {
  const auto target = reference_summary();
  const auto a = reconstruct_dataset(target, opts(1));
  const auto b = reconstruct_dataset(target, opts(2));
  expect_same_summary(summarize(a.dataset), summarize(b.dataset));
}

TEST(Reconstruct, SameSeedSameDatasetWhateverTheJobs) {
  const auto target = reference_summary();
  auto o = opts(7);
  const auto a = reconstruct_dataset(target, o);
  o.jobs = 3;
  const auto b = reconstruct_dataset(target, o);
  EXPECT_EQ(loans_to_csv(a.dataset), loans_to_csv(b.dataset));
  EXPECT_EQ(a.restart, b.restart);
}

TEST(Reconstruct, InconsistentCountsAreUnsatisfiable) {
  auto target = reference_summary();
  target.bucket_counts = {40, 9, 5};  // 54 loans against 53 starts
  try {
    (void)reconstruct_dataset(target, opts(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Unsatisfiable);
  }
}

TEST(Reconstruct, ImpossibleMeanRateIsUnsatisfiable) {
  auto target = reference_summary();
  target.mean_nominal_rate = Decimal::parse("0.5");
  EXPECT_THROW((void)reconstruct_dataset(target, opts(1)), Error);
}
