#pragma once

#include <cstdint>

#include "circuitforge/medici/dataset.hpp"

namespace circuitforge::medici {

struct ReconstructOptions {
  std::uint64_t seed = 1;
  /// Worker threads for restarts; 0 means hardware concurrency.
  int jobs = 0;
  /// Candidate moves per restart before it gives up.
  long budget = 1'000'000;
  int restarts = 16;
  int first_year = 1435;
  int year_span = 27;
  Decimal min_rate = Decimal::parse("0.077");
  Decimal max_rate = Decimal::parse("0.288");
};

struct ReconstructResult {
  LoanDataset dataset;
  /// Index of the restart that produced the dataset.
  int restart = 0;
  long moves = 0;
};

/// Seeded search for a dataset whose summary equals `constraints` (bucket
/// counts, seasonality, monthly coincidence, mean rate). The chosen restart is
/// the lowest-index success, so the result does not depend on `jobs`.
/// Throws Unsatisfiable naming the worst violated constraint.
ReconstructResult reconstruct_dataset(const DatasetSummary& constraints, const ReconstructOptions& opt = {});

}  // namespace circuitforge::medici
