#include <iostream>
#include <optional>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/dataio/svg.hpp"
#include "circuitforge/error.hpp"
#include "circuitforge/policy/simulation.hpp"
#include "run.hpp"

namespace circuitforge::cli {

using dataio::CellType;
using dataio::TableDocument;
using policy::Unit;

namespace {

std::optional<Decimal> as_number(const std::string& s) {
  try {
    return Decimal::parse(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

dataio::ChartSpec line_chart(std::string title, std::string y_label, const policy::Series& s, std::string name) {
  dataio::ChartSpec spec;
  spec.kind = dataio::ChartKind::Line;
  spec.title = std::move(title);
  spec.x_label = "year";
  spec.y_label = std::move(y_label);
  dataio::ChartSeries cs{std::move(name), {}, {}};
  for (const auto& p : s.points()) {
    cs.x.push_back(p.date.year() + (p.date.month() - 1) / 12.0 + (p.date.day() - 1) / 365.0);
    cs.y.push_back(p.value.to_double());
  }
  spec.series.push_back(std::move(cs));
  return spec;
}

}  // namespace

void register_policy(CLI::App& app, Common& c, Action& action) {
  auto* pol = app.add_subcommand("policy", "Principal allocation arithmetic and ledger-driven policy scenarios");
  pol->require_subcommand(1);

  // ---- normalize
  auto* norm = pol->add_subcommand("normalize", "Annualized principal flow from a loan stock and maturity series");
  static std::string stock_path, maturity_path;
  norm->add_option("--stock", stock_path, "Loan stock CSV, currency-billions")->required();
  norm->add_option("--maturity", maturity_path, "Weighted-average maturity CSV, months")->required();
  add_common(norm, c);
  norm->callback([&] {
    action = [&] {
      const std::string ext = extension(c, true);
      Manifest m{"policy normalize"};
      m.add_input(stock_path);
      m.add_input(maturity_path);
      m.config["stock"] = stock_path;
      m.config["maturity"] = maturity_path;
      const auto stock = dataio::read_series(stock_path, Unit::CurrencyBillions);
      const auto mat = dataio::read_series(maturity_path, Unit::Months);
      if (stock.skipped + mat.skipped > 0)
        std::cerr << "skipped " << stock.skipped << " stock and " << mat.skipped << " maturity rows with no value\n";
      const auto flow = policy::normalize_principal_flow(stock.series, mat.series);
      std::cerr << "median stock " << stock.series.median().to_string(2) << ", median maturity "
                << mat.series.median().to_string(2) << " months, median flow " << flow.median().to_string(2)
                << " over " << flow.size() << " points\n";
      if (c.format == "svg")
        emit(c, m, "flow" + ext, dataio::render_chart(line_chart("Principal flow", "billions/year", flow, "flow")));
      else
        emit(c, m, "flow" + ext, dataio::series_to_csv(flow, "FLOW", 3));
    };
  });

  // ---- allocate
  auto* alloc = pol->add_subcommand("allocate", "Split principal between government levels and the bank");
  static std::string config_path, flow_path, amount;
  alloc->add_option("--config", config_path, "Allocation JSON")->required();
  auto* flow_opt = alloc->add_option("--flow", flow_path, "Flow series CSV");
  alloc->add_option("--amount", amount, "A single amount")->excludes(flow_opt);
  add_common(alloc, c);
  alloc->callback([&] {
    action = [&] {
      const std::string ext = extension(c, false);
      if (flow_path.empty() && amount.empty()) throw Error(Errc::InvalidArgument, "give --flow or --amount");
      Manifest m{"policy allocate"};
      m.add_input(config_path);
      m.config["config"] = config_path;
      const auto cfg = policy::parse_allocation_config(dataio::read_text(config_path));
      TableDocument doc;
      if (!amount.empty()) {
        const auto v = as_number(amount);
        if (!v) throw Error(Errc::InvalidArgument, "--amount: '" + amount + "' is not a number");
        m.config["amount"] = amount;
        const auto parts = policy::split_exact(*v, cfg);
        doc.columns = {{"recipient", CellType::Text}, {"amount", CellType::Decimal, 6}};
        const char* names[] = {"local", "state", "federal", "bank"};
        for (std::size_t i = 0; i < 4; ++i) doc.rows.push_back({std::string(names[i]), parts[i]});
      } else {
        m.add_input(flow_path);
        m.config["flow"] = flow_path;
        const auto flow = dataio::read_series(flow_path, Unit::CurrencyBillionsPerYear);
        const auto a = policy::allocate_principal(flow.series, cfg);
        doc.columns = {{"DATE", CellType::Date},
                       {"local", CellType::Decimal, 6},
                       {"state", CellType::Decimal, 6},
                       {"federal", CellType::Decimal, 6},
                       {"bank", CellType::Decimal, 6}};
        for (std::size_t i = 0; i < flow.series.size(); ++i)
          doc.rows.push_back({a.local.points()[i].date, a.local.points()[i].value, a.state.points()[i].value,
                              a.federal.points()[i].value, a.bank.points()[i].value});
      }
      emit(c, m, "allocation" + ext, dataio::to_csv(doc));
    };
  });

  // ---- uplift
  auto* up = pol->add_subcommand("uplift", "Receipts as a percentage of existing tax revenue");
  static std::string receipts, tax;
  up->add_option("--receipts", receipts, "Amount, or a series CSV")->required();
  up->add_option("--tax", tax, "Amount, or a series CSV")->required();
  add_common(up, c);
  up->callback([&] {
    action = [&] {
      const std::string ext = extension(c, false);
      Manifest m{"policy uplift"};
      m.config["receipts"] = receipts;
      m.config["tax"] = tax;
      TableDocument doc;
      const auto r = as_number(receipts);
      const auto t = as_number(tax);
      if (r && t) {
        doc.columns = {{"receipts", CellType::Decimal, 2},
                       {"tax_revenue", CellType::Decimal, 2},
                       {"uplift_pct", CellType::Decimal, 2}};
        doc.rows.push_back({*r, *t, policy::tax_uplift(*r, *t)});
      } else if (!r && !t) {
        m.add_input(receipts);
        m.add_input(tax);
        const auto rs = dataio::read_series(receipts, Unit::CurrencyBillions);
        const auto ts = dataio::read_series(tax, Unit::CurrencyBillions);
        const auto u = policy::tax_uplift(rs.series, ts.series);
        doc.columns = {{"DATE", CellType::Date}, {"uplift_pct", CellType::Decimal, 2}};
        for (const auto& p : u.points()) doc.rows.push_back({p.date, p.value});
      } else {
        throw Error(Errc::InvalidArgument, "--receipts and --tax must both be amounts or both be files");
      }
      emit(c, m, "uplift" + ext, dataio::to_csv(doc));
    };
  });

  // ---- run
  auto* run = pol->add_subcommand("run", "Drive the ledger through a multi-period policy scenario");
  static std::string scenario_path;
  run->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  add_common(run, c);
  run->callback([&] {
    action = [&] {
      const std::string ext = extension(c, true);
      Manifest m{"policy run"};
      m.add_input(scenario_path);
      m.config["scenario"] = scenario_path;
      const auto sc = policy::parse_policy_scenario(dataio::read_text(scenario_path));
      const auto rep = policy::run_policy_scenario(sc);
      std::cerr << "baseline money supply " << rep.baseline_supply.to_string() << ", final "
                << (rep.periods.empty() ? rep.baseline_supply : rep.periods.back().money_supply).to_string() << "\n";
      if (c.format == "svg") {
        dataio::ChartSpec spec;
        spec.kind = dataio::ChartKind::Line;
        spec.title = "Money supply by period";
        spec.x_label = "period";
        spec.y_label = "money supply";
        dataio::ChartSeries s{"money_supply", {}, {}};
        for (const auto& p : rep.periods) {
          s.x.push_back(p.period);
          s.y.push_back(p.money_supply.to_double());
        }
        spec.series.push_back(std::move(s));
        emit(c, m, "report" + ext, dataio::render_chart(spec));
        return;
      }
      TableDocument doc;
      doc.columns = {{"period", CellType::Integer},
                     {"originated", CellType::Decimal, 2},
                     {"principal_repaid", CellType::Decimal, 2},
                     {"gov_receipts", CellType::Decimal, 2},
                     {"respend", CellType::Decimal, 2},
                     {"money_supply", CellType::Decimal, 2}};
      for (auto s : ledger::kAllSectors)
        doc.columns.push_back({"equity_" + std::string(ledger::to_string(s)), CellType::Decimal, 2});
      for (const auto& p : rep.periods) {
        std::vector<dataio::Cell> row{std::int64_t{p.period},         p.originated.to_decimal(),
                                      p.principal_repaid.to_decimal(), p.gov_receipts.to_decimal(),
                                      p.respend.to_decimal(),          p.money_supply.to_decimal()};
        for (const auto& e : p.sector_equity) row.emplace_back(e.to_decimal());
        doc.rows.push_back(std::move(row));
      }
      emit(c, m, "report" + ext, dataio::to_csv(doc));
    };
  });
}

void register_venture(CLI::App& app, Common& c, Action& action) {
  auto* ven = app.add_subcommand("venture", "At-risk venture lending on the bank's own account");
  ven->require_subcommand(1);
  auto* run = ven->add_subcommand("run", "Resolve a portfolio of venture outcomes");
  static std::string portfolio_path;
  run->add_option("--portfolio", portfolio_path, "Portfolio JSON")->required();
  add_common(run, c);
  run->callback([&] {
    action = [&] {
      const std::string ext = extension(c, false);
      Manifest m{"venture run"};
      m.add_input(portfolio_path);
      m.config["portfolio"] = portfolio_path;
      const auto pf = policy::parse_portfolio(dataio::read_text(portfolio_path));
      const auto rep = policy::run_venture_portfolio(pf);
      std::cerr << "permanent money created " << rep.permanent_money_created.to_string() << ", equity booked "
                << rep.equity_booked.to_string() << ", writedowns " << rep.writedowns.to_string() << ", reserves "
                << rep.reserves_before.to_string() << " -> " << rep.reserves_after.to_string() << "\n";
      TableDocument doc;
      doc.columns = {{"loan_id", CellType::Text},
                     {"resolution", CellType::Text},
                     {"invested", CellType::Decimal, 2},
                     {"realized_equity_value", CellType::Decimal, 2},
                     {"writedown", CellType::Decimal, 2}};
      Money invested = Money(0, pf.currency);
      for (const auto& o : rep.outcomes) {
        doc.rows.push_back({o.loan_id, std::string(policy::to_string(o.resolution)), o.invested.to_decimal(),
                            o.realized_equity_value.to_decimal(), o.writedown.to_decimal()});
        invested += o.invested;
      }
      doc.rows.push_back({std::string("TOTAL"), std::string{}, invested.to_decimal(),
                          rep.equity_booked.to_decimal(), rep.writedowns.to_decimal()});
      emit(c, m, "venture" + ext, dataio::to_csv(doc));
    };
  });
}

}  // namespace circuitforge::cli
