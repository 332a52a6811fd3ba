#include "circuitforge/medici/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

#include "circuitforge/error.hpp"

namespace circuitforge::medici {

namespace {

constexpr int kMonthDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
constexpr int kBucketLo[3] = {30, 78, 108};
constexpr int kBucketHi[3] = {77, 107, 200};
constexpr int kBucketCenter[3] = {60, 95, 120};
constexpr const char* kMonthNames[12] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                         "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr const char* kSeasonNames[4] = {"Winter", "Spring", "Summer", "Fall"};

// A loan placed on the folded calendar: start month (0-based) and the number
// of months it touches.
struct Arc {
  int s = 0;
  int len = 1;
};

int season0(int m) { return season_of(static_cast<unsigned>(m + 1)); }

// Duration range (days) that starts in month s and ends in month s+len-1, non-leap year.
std::pair<int, int> arc_days(int s, int len) {
  if (len == 1) return {kMonthDays[s] - 1, kMonthDays[s] - 1};
  int mid = 0;
  for (int i = 1; i < len - 1; ++i) mid += kMonthDays[(s + i) % 12];
  int all = 0;
  for (int i = 0; i < len; ++i) all += kMonthDays[(s + i) % 12];
  return {mid + 1, all - 1};
}

bool arc_fits(int bucket, Arc a) {
  if (a.len < 1 || a.len > 8) return false;
  auto [lo, hi] = arc_days(a.s, a.len);
  return std::max(lo, kBucketLo[bucket]) <= std::min(hi, kBucketHi[bucket]);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x9e3779b9u};
    gen_.seed(seq);
  }
  std::uint64_t next() { return gen_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 gen_;
};

struct Target {
  std::array<int, 3> buckets{};
  std::array<int, 12> counts{};
  std::array<int, 4> starts{};
  std::array<int, 4> ends{};
  int n = 0;
};

struct Tally {
  std::array<int, 12> counts{};
  std::array<int, 4> starts{};
  std::array<int, 4> ends{};

  void apply(Arc a, int d) {
    for (int i = 0; i < a.len; ++i) counts[static_cast<std::size_t>((a.s + i) % 12)] += d;
    starts[static_cast<std::size_t>(season0(a.s))] += d;
    ends[static_cast<std::size_t>(season0((a.s + a.len - 1) % 12))] += d;
  }
  int cost(const Target& t) const {
    int c = 0;
    for (std::size_t m = 0; m < 12; ++m) c += std::abs(counts[m] - t.counts[m]);
    for (std::size_t q = 0; q < 4; ++q) c += std::abs(starts[q] - t.starts[q]) + std::abs(ends[q] - t.ends[q]);
    return c;
  }
};

struct Attempt {
  bool ok = false;
  long moves = 0;
  int cost = 0;
  std::vector<int> bucket;
  std::vector<Arc> arcs;
  Tally tally;
};

Attempt anneal(const Target& t, const std::array<std::vector<Arc>, 3>& options, std::uint64_t seed, int restart,
               long budget) {
  Rng rng(seed, static_cast<std::uint64_t>(restart));
  Attempt a;
  for (int b = 0; b < 3; ++b)
    for (int i = 0; i < t.buckets[static_cast<std::size_t>(b)]; ++i) a.bucket.push_back(b);
  const std::size_t n = a.bucket.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& opts = options[static_cast<std::size_t>(a.bucket[i])];
    a.arcs.push_back(opts[rng.below(opts.size())]);
    a.tally.apply(a.arcs.back(), 1);
  }
  int cost = a.tally.cost(t);
  constexpr double kHot = 0.8, kCold = 0.3;
  constexpr long kCycle = 25'000;

  auto propose = [&](std::size_t i) {
    const auto& opts = options[static_cast<std::size_t>(a.bucket[i])];
    Arc o = a.arcs[i];
    const double r = rng.uniform();
    if (r < 0.3) return opts[rng.below(opts.size())];
    const int d = (rng.next() & 1) ? 1 : -1;
    if (r < 0.55) {
      o.s = (o.s + d + 12) % 12;
    } else if (r < 0.8) {
      o.len += d;
    } else {
      o.s = (o.s + d + 12) % 12;
      o.len -= d;
    }
    return o;
  };

  long it = 0;
  for (; it < budget && cost > 0; ++it) {
    const double temp = kHot * std::pow(kCold / kHot, static_cast<double>(it % kCycle) / kCycle);
    const int k = rng.uniform() < 0.15 ? 2 : 1;
    std::size_t idx[2];
    Arc olds[2], news[2];
    bool valid = true;
    for (int q = 0; q < k; ++q) {
      idx[q] = rng.below(n);
      if (q == 1 && idx[1] == idx[0]) valid = false;
      olds[q] = a.arcs[idx[q]];
      news[q] = propose(idx[q]);
      if (!arc_fits(a.bucket[idx[q]], news[q])) valid = false;
    }
    if (!valid) continue;
    for (int q = 0; q < k; ++q) {
      a.tally.apply(olds[q], -1);
      a.tally.apply(news[q], 1);
    }
    const int nc = a.tally.cost(t);
    if (nc <= cost || rng.uniform() < std::exp((cost - nc) / temp)) {
      for (int q = 0; q < k; ++q) a.arcs[idx[q]] = news[q];
      cost = nc;
    } else {
      for (int q = k - 1; q >= 0; --q) {
        a.tally.apply(news[q], -1);
        a.tally.apply(olds[q], 1);
      }
    }
  }
  a.ok = cost == 0;
  a.moves = it;
  a.cost = cost;
  return a;
}

std::string worst_violation(const Target& t, const Tally& got) {
  std::string name;
  int worst = -1;
  auto consider = [&](int diff, const std::string& what) {
    if (std::abs(diff) > worst) {
      worst = std::abs(diff);
      name = what + " off by " + std::to_string(diff);
    }
  };
  for (std::size_t m = 0; m < 12; ++m)
    consider(got.counts[m] - t.counts[m], std::string("monthly_coincidence[") + kMonthNames[m] + "]");
  for (std::size_t q = 0; q < 4; ++q) {
    consider(got.starts[q] - t.starts[q], std::string("seasonality.starts[") + kSeasonNames[q] + "]");
    consider(got.ends[q] - t.ends[q], std::string("seasonality.ends[") + kSeasonNames[q] + "]");
  }
  return name;
}

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

LoanRecord realize(Arc arc, int bucket, Rng& rng, const ReconstructOptions& opt) {
  const bool wraps = arc.s + arc.len - 1 >= 12;
  std::vector<int> years;
  for (int y = opt.first_year; y < opt.first_year + opt.year_span; ++y)
    if (!leap(y) && !(wraps && leap(y + 1))) years.push_back(y);
  if (years.empty()) throw Error(Errc::Unsatisfiable, "no usable year in the reconstruction window");
  const int year = years[rng.below(years.size())];

  auto [lo, hi] = arc_days(arc.s, arc.len);
  lo = std::max(lo, kBucketLo[bucket]);
  hi = std::min(hi, kBucketHi[bucket]);
  const int target = kBucketCenter[bucket] + static_cast<int>(rng.below(17)) - 8;
  std::vector<int> durations;
  for (int d = lo; d <= hi; ++d) durations.push_back(d);
  std::stable_sort(durations.begin(), durations.end(),
                   [&](int x, int y) { return std::abs(x - target) < std::abs(y - target); });

  const Date first(year, static_cast<unsigned>(arc.s + 1), 1);
  const int end_month = (arc.s + arc.len - 1) % 12 + 1;
  for (int dur : durations) {
    std::vector<Date> starts;
    for (int day = 0; day < kMonthDays[arc.s]; ++day) {
      const Date st = first.add_days(day);
      if (static_cast<int>(st.add_days(dur).month()) == end_month) starts.push_back(st);
    }
    if (starts.empty()) continue;
    const Date st = starts[rng.below(starts.size())];
    return LoanRecord{"", st, st.add_days(dur), Decimal{}};
  }
  throw Error(Errc::Unsatisfiable, "no calendar placement for an arc");
}

// Rates in hundredths of a percent, covering both extremes and summing to `total`.
std::vector<std::int64_t> draw_rates(std::size_t n, std::int64_t lo, std::int64_t hi, std::int64_t total, Rng& rng) {
  std::vector<std::int64_t> r(n);
  const double mean = static_cast<double>(total) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = mean + 0.24 * mean * rng.normal();
    r[i] = std::clamp<std::int64_t>(std::llround(v), lo, hi);
  }
  if (n >= 2) {
    r[0] = lo;
    r[1] = hi;
  }
  std::int64_t diff = total - std::accumulate(r.begin(), r.end(), std::int64_t{0});
  const std::size_t first_free = n >= 3 ? 2 : 0;
  long guard = 0;
  while (diff != 0) {
    if (++guard > 100'000'000) throw Error(Errc::Unsatisfiable, "mean rate cannot be met within the rate range");
    const std::size_t i = first_free + rng.below(n - first_free);
    const std::int64_t step = diff > 0 ? 1 : -1;
    if (r[i] + step < lo || r[i] + step > hi) continue;
    r[i] += step;
    diff -= step;
  }
  for (std::size_t i = n; i > 1; --i) std::swap(r[i - 1], r[rng.below(i)]);
  return r;
}

}  // namespace

ReconstructResult reconstruct_dataset(const DatasetSummary& c, const ReconstructOptions& opt) {
  Target t;
  t.buckets = c.bucket_counts;
  t.counts = c.monthly_coincidence;
  t.starts = c.seasonality.starts;
  t.ends = c.seasonality.ends;
  t.n = t.buckets[0] + t.buckets[1] + t.buckets[2];

  auto fail = [](const std::string& what) { return Error(Errc::Unsatisfiable, what); };
  for (int v : t.buckets)
    if (v < 0) throw fail("bucket_counts has a negative entry");
  if (t.n <= 0) throw fail("bucket_counts asks for no loans");
  const int nstarts = std::accumulate(t.starts.begin(), t.starts.end(), 0);
  const int nends = std::accumulate(t.ends.begin(), t.ends.end(), 0);
  if (nstarts != t.n)
    throw fail("seasonality.starts totals " + std::to_string(nstarts) + " loans but bucket_counts totals " +
               std::to_string(t.n));
  if (nends != t.n)
    throw fail("seasonality.ends totals " + std::to_string(nends) + " loans but bucket_counts totals " +
               std::to_string(t.n));
  for (std::size_t m = 0; m < 12; ++m)
    if (t.counts[m] < 0 || t.counts[m] > t.n)
      throw fail(std::string("monthly_coincidence[") + kMonthNames[m] + "] = " + std::to_string(t.counts[m]) +
                 " exceeds " + std::to_string(t.n) + " loans");
  const int touched = std::accumulate(t.counts.begin(), t.counts.end(), 0);
  const int min_touch = t.buckets[0] * 1 + t.buckets[1] * 3 + t.buckets[2] * 4;
  const int max_touch = t.buckets[0] * 4 + t.buckets[1] * 5 + t.buckets[2] * 8;
  if (touched < min_touch || touched > max_touch)
    throw fail("monthly_coincidence totals " + std::to_string(touched) + " loan-months; bucket_counts allow " +
               std::to_string(min_touch) + ".." + std::to_string(max_touch));
  if (c.mean_nominal_rate < opt.min_rate || c.mean_nominal_rate > opt.max_rate)
    throw fail("mean_nominal_rate outside the allowed rate range");

  std::array<std::vector<Arc>, 3> options;
  for (int b = 0; b < 3; ++b)
    for (int s = 0; s < 12; ++s)
      for (int len = 1; len <= 8; ++len)
        if (arc_fits(b, {s, len})) options[static_cast<std::size_t>(b)].push_back({s, len});

  const int jobs = opt.jobs > 0 ? opt.jobs : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  std::optional<Attempt> best;
  std::optional<Attempt> closest;
  int winner = -1;
  for (int batch = 0; batch < opt.restarts && winner < 0; batch += jobs) {
    const int count = std::min(jobs, opt.restarts - batch);
    std::vector<Attempt> results(static_cast<std::size_t>(count));
    std::vector<std::thread> workers;
    for (int k = 0; k < count; ++k)
      workers.emplace_back([&, k] {
        results[static_cast<std::size_t>(k)] = anneal(t, options, opt.seed, batch + k, opt.budget);
      });
    for (auto& w : workers) w.join();
    for (int k = 0; k < count; ++k) {
      auto& r = results[static_cast<std::size_t>(k)];
      if (r.ok) {
        best = std::move(r);
        winner = batch + k;
        break;
      }
      if (!closest || r.cost < closest->cost) closest = std::move(r);
    }
  }
  if (winner < 0)
    throw fail("no dataset found in " + std::to_string(opt.restarts) + " restarts of " + std::to_string(opt.budget) +
               " moves; tightest constraint: " + worst_violation(t, closest->tally));

  Rng rng(opt.seed, 0x5eed0000u + static_cast<std::uint64_t>(winner));
  std::vector<LoanRecord> recs;
  for (std::size_t i = 0; i < best->arcs.size(); ++i) recs.push_back(realize(best->arcs[i], best->bucket[i], rng, opt));

  const std::int64_t lo = opt.min_rate.micros() / 100;
  const std::int64_t hi = opt.max_rate.micros() / 100;
  const std::int64_t total =
      div_round_half_up(static_cast<int128>(c.mean_nominal_rate.micros()) * t.n, 100);
  const auto rates = draw_rates(recs.size(), lo, hi, total, rng);
  for (std::size_t i = 0; i < recs.size(); ++i) recs[i].nominal_annual_rate = Decimal::from_micros(rates[i] * 100);

  std::stable_sort(recs.begin(), recs.end(), [](const LoanRecord& a, const LoanRecord& b) {
    return a.start_date < b.start_date || (a.start_date == b.start_date && a.end_date < b.end_date);
  });
  for (std::size_t i = 0; i < recs.size(); ++i) {
    recs[i].id = (i + 1 < 10 ? "M0" : "M") + std::to_string(i + 1);
  }

  ReconstructResult out{LoanDataset{std::move(recs)}, winner, best->moves};
  const DatasetSummary got = summarize(out.dataset);
  if (got.bucket_counts != c.bucket_counts) throw fail("self-check: bucket_counts differ");
  if (got.seasonality.starts != c.seasonality.starts || got.seasonality.ends != c.seasonality.ends)
    throw fail("self-check: seasonality differs");
  if (got.monthly_coincidence != c.monthly_coincidence) throw fail("self-check: monthly_coincidence differs");
  const auto gap = std::llabs(got.mean_nominal_rate.micros() - c.mean_nominal_rate.micros());
  if (gap > 1000) throw fail("self-check: mean_nominal_rate misses by more than 0.1pp");
  return out;
}

}  // namespace circuitforge::medici
