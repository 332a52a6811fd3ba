#include <algorithm>
#include <cstdio>
#include <iostream>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/dataio/svg.hpp"
#include "circuitforge/error.hpp"
#include "circuitforge/ledger/scenario.hpp"
#include "circuitforge/medici/calibration.hpp"
#include "circuitforge/medici/dataset.hpp"
#include "circuitforge/medici/reconstruct.hpp"
#include "run.hpp"

namespace circuitforge::cli {

using dataio::CellType;
using dataio::TableDocument;

namespace {

constexpr const char* kMonths[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                   "jul", "aug", "sep", "oct", "nov", "dec"};
constexpr const char* kSeasons[] = {"winter", "spring", "summer", "fall"};

double parse_fraction(const std::string& s, const char* what) {
  try {
    return Decimal::parse(s).to_double();
  } catch (const Error&) {
    throw Error(Errc::InvalidArgument, std::string(what) + ": '" + s + "' is not a number");
  }
}

std::string fmt(double v, const char* f = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

void register_ledger(CLI::App& app, Common& c, Action& action) {
  auto* ledger = app.add_subcommand("ledger", "Double-entry ledger scenarios");
  ledger->require_subcommand(1);
  auto* replay = ledger->add_subcommand("replay", "Replay a scenario and tabulate balance changes per step");
  static std::string scenario;
  replay->add_option("scenario", scenario, "Scenario JSON")->required();
  add_common(replay, c);
  replay->callback([&] {
    action = [&] {
      const std::string ext = extension(c, false);
      Manifest m{"ledger replay"};
      m.add_input(scenario);
      m.config["scenario"] = scenario;
      const auto r = ledger::replay_scenario_file(scenario);

      TableDocument doc;
      doc.columns = {{"step", CellType::Text}, {"label", CellType::Text}};
      for (const auto& col : r.columns) doc.columns.push_back({col.label, CellType::Decimal, 2});
      for (const auto& row : r.rows) {
        std::vector<dataio::Cell> cells{std::to_string(row.index), row.label};
        for (const auto& d : row.deltas) cells.emplace_back(d.to_decimal());
        doc.rows.push_back(std::move(cells));
      }
      std::vector<dataio::Cell> total{std::string{}, std::string("Total")};
      for (const auto& t : r.totals) total.emplace_back(t.to_decimal());
      doc.rows.push_back(std::move(total));
      emit(c, m, "balances" + ext, dataio::to_csv(doc));
    };
  });
}

void register_medici(CLI::App& app, Common& c, Action& action) {
  auto* medici = app.add_subcommand("medici", "Historical loan statistics and calibration models");
  medici->require_subcommand(1);

  // ---- stats
  auto* stats = medici->add_subcommand("stats", "Summary statistics of a loan dataset CSV");
  static std::string loans_path;
  static int bins = 10;
  stats->add_option("loans", loans_path, "Loan dataset CSV")->required();
  stats->add_option("--bins", bins, "Histogram bins for --format svg")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(stats, c);
  stats->callback([&] {
    action = [&] {
      const std::string ext = extension(c, true);
      Manifest m{"medici stats"};
      m.add_input(loans_path);
      m.config["loans"] = loans_path;
      const auto ds = medici::read_loans(loans_path);
      const auto s = medici::summarize(ds);
      std::cerr << "loans: " << ds.records.size() << "  utilization: " << s.utilization.to_string(4)
                << "  mean rate: " << s.mean_nominal_rate.to_string(4)
                << "  effective yield: " << s.effective_yield.to_string(4) << "\n";
      if (c.format == "svg") {
        m.config["bins"] = bins;
        dataio::ChartSpec spec;
        spec.kind = dataio::ChartKind::Histogram;
        spec.title = "Nominal annual rates";
        spec.x_label = "rate (%)";
        spec.y_label = "loans";
        spec.bins = bins;
        dataio::ChartSeries series{"rates", {}, {}};
        for (const auto& r : ds.records) series.x.push_back(r.nominal_annual_rate.to_double() * 100);
        spec.series.push_back(std::move(series));
        emit(c, m, "stats" + ext, dataio::render_chart(spec));
        return;
      }
      TableDocument doc;
      doc.columns = {{"metric", CellType::Text}, {"value", CellType::Text}};
      auto add = [&](std::string k, std::string v) { doc.rows.push_back({std::move(k), std::move(v)}); };
      add("loans", std::to_string(ds.records.size()));
      const char* buckets[] = {"bucket_60", "bucket_95", "bucket_120"};
      for (int i = 0; i < 3; ++i) add(buckets[i], std::to_string(s.bucket_counts[static_cast<std::size_t>(i)]));
      for (int i = 0; i < 4; ++i)
        add(std::string("starts_") + kSeasons[i], std::to_string(s.seasonality.starts[static_cast<std::size_t>(i)]));
      for (int i = 0; i < 4; ++i)
        add(std::string("ends_") + kSeasons[i], std::to_string(s.seasonality.ends[static_cast<std::size_t>(i)]));
      for (int i = 0; i < 12; ++i)
        add(std::string("coincidence_") + kMonths[i],
            std::to_string(s.monthly_coincidence[static_cast<std::size_t>(i)]));
      add("mean_nominal_rate", s.mean_nominal_rate.to_string(6));
      add("utilization", s.utilization.to_string(6));
      add("effective_yield", s.effective_yield.to_string(6));
      emit(c, m, "stats" + ext, dataio::to_csv(doc));
    };
  });

  // ---- reconstruct
  auto* rec = medici->add_subcommand("reconstruct", "Search for a 53-loan dataset matching the published summaries");
  static long budget = 1'000'000;
  static int restarts = 16;
  rec->add_option("--budget", budget, "Moves per restart")->check(CLI::PositiveNumber)->capture_default_str();
  rec->add_option("--restarts", restarts, "Independent restarts")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(rec, c);
  rec->callback([&] {
    action = [&] {
      const std::string ext = extension(c, false);
      Manifest m{"medici reconstruct"};
      m.config["budget"] = budget;
      m.config["restarts"] = restarts;
      medici::ReconstructOptions opt;
      opt.seed = c.seed;
      opt.jobs = c.jobs;
      opt.budget = budget;
      opt.restarts = restarts;
      const auto r = medici::reconstruct_dataset(medici::reference_summary(), opt);
      std::cerr << "restart " << r.restart << " converged after " << r.moves << " moves\n";
      emit(c, m, "loans" + ext, medici::loans_to_csv(r.dataset));
    };
  });

  // ---- calibrate
  auto* cal = medici->add_subcommand("calibrate", "Solve the required interest rate per period");
  static int model = 2;
  static std::vector<std::string> retentions, deposits;
  static std::string share = "0.5", tolerance = "5";
  cal->add_option("--model", model, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}))->capture_default_str();
  cal->add_option("--retention", retentions, "Retention fractions, e.g. 0.10 (repeatable)");
  cal->add_option("--deposits", deposits, "Deposit multiples k for model 3 (repeatable)");
  cal->add_option("--share", share, "Depositor share of deposit-funded interest")->capture_default_str();
  cal->add_option("--tolerance", tolerance, "Flag residuals beyond this many percent")->capture_default_str();
  add_common(cal, c);
  cal->callback([&] {
    action = [&] {
      const std::string ext = extension(c, model != 1);
      Manifest m{"medici calibrate"};
      m.config["model"] = model;
      if (model == 1) {
        struct Row {
          const char* label;
          double years;
          std::int64_t capital, earnings;
        };
        std::vector<Row> rows{{"1397-1398", 1.5, 8000, 1200}};
        for (const auto& t : medici::canonical_targets())
          rows.push_back({nullptr, double(t.years), t.starting_capital.cents() / 100, t.reported_earnings.cents() / 100});
        const auto targets = medici::canonical_targets();
        TableDocument doc;
        doc.columns = {{"period", CellType::Text},    {"years", CellType::Text},
                       {"capital", CellType::Integer}, {"earnings", CellType::Integer},
                       {"multiple", CellType::Text},   {"growth_per_annum", CellType::Text}};
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto& r = rows[i];
          const auto res = medici::model1(Money(r.capital * 100, "F"), Money(r.earnings * 100, "F"), r.years);
          doc.rows.push_back({std::string(r.label ? r.label : targets[i - 1].period_label), fmt(r.years, "%g"),
                              r.capital, r.earnings, fmt(res.multiple, "%.6f"), fmt(res.growth, "%.6f")});
        }
        emit(c, m, "model1" + ext, dataio::to_csv(doc));
        return;
      }

      medici::CalibrationOptions opt;
      opt.model = model;
      for (const auto& s : retentions) opt.retentions.push_back(parse_fraction(s, "--retention"));
      for (const auto& s : deposits) opt.deposit_multiples.push_back(parse_fraction(s, "--deposits"));
      opt.depositor_share = parse_fraction(share, "--share");
      opt.tolerance_pct = parse_fraction(tolerance, "--tolerance");
      opt.jobs = c.jobs;
      const auto rep = medici::calibrate(opt);
      std::vector<double> fs, ks;
      for (const auto& cell : rep.cells) {
        if (std::find(fs.begin(), fs.end(), cell.retention) == fs.end()) fs.push_back(cell.retention);
        if (model == 3 && std::find(ks.begin(), ks.end(), cell.deposit_multiple) == ks.end())
          ks.push_back(cell.deposit_multiple);
      }
      m.config["retentions"] = fs;
      if (model == 3) m.config["deposit_multiples"] = ks;
      m.config["share"] = share;
      m.config["tolerance_pct"] = tolerance;

      for (std::size_t p = 0; p < rep.periods.size(); ++p)
        for (std::size_t k = 0; k < rep.cells.size(); ++k) {
          const auto& cr = rep.results[p][k];
          std::cerr << rep.periods[p].period_label << "  " << rep.cells[k].label << "  rate " << fmt(cr.rate * 100)
                    << "%";
          if (cr.reference_pct)
            std::cerr << "  reference " << fmt(*cr.reference_pct) << "%  residual " << fmt(*cr.residual_pct, "%+.2f")
                      << "%";
          std::cerr << (cr.flagged ? "  MISMATCH" : "  ok") << "\n";
        }

      if (c.format == "svg") {
        dataio::ChartSpec spec;
        spec.kind = dataio::ChartKind::Line;
        spec.title = "Required rate, model " + std::to_string(model);
        spec.x_label = "period end";
        spec.y_label = "rate (%)";
        for (std::size_t k = 0; k < rep.cells.size(); ++k) {
          dataio::ChartSeries s{rep.cells[k].label, {}, {}};
          for (std::size_t p = 0; p < rep.periods.size(); ++p) {
            s.x.push_back(rep.periods[p].end_year);
            s.y.push_back(rep.results[p][k].rate * 100);
          }
          spec.series.push_back(std::move(s));
        }
        emit(c, m, "model" + std::to_string(model) + ext, dataio::render_chart(spec));
        return;
      }

      TableDocument doc;
      doc.columns = {{"period", CellType::Text}};
      for (const auto& cell : rep.cells) doc.columns.push_back({cell.label, CellType::Text});
      doc.columns.push_back({"residual_pct", CellType::Text});
      doc.columns.push_back({"flag", CellType::Text});
      for (std::size_t p = 0; p < rep.periods.size(); ++p) {
        std::vector<dataio::Cell> row{rep.periods[p].period_label};
        std::optional<double> worst;
        std::string flagged;
        for (std::size_t k = 0; k < rep.cells.size(); ++k) {
          const auto& cr = rep.results[p][k];
          row.emplace_back(fmt(cr.rate * 100));
          if (cr.residual_pct && (!worst || std::abs(*cr.residual_pct) > std::abs(*worst))) worst = cr.residual_pct;
          if (cr.flagged) flagged += (flagged.empty() ? "" : " ") + rep.cells[k].label;
        }
        row.emplace_back(worst ? fmt(*worst, "%+.2f") : std::string("n/a"));
        row.emplace_back(flagged.empty() ? std::string("ok") : "MISMATCH(" + flagged + ")");
        doc.rows.push_back(std::move(row));
      }
      emit(c, m, "model" + std::to_string(model) + ext, dataio::to_csv(doc));
    };
  });
}

}  // namespace circuitforge::cli
