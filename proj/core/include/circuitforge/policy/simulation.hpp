#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "circuitforge/ledger/ledger.hpp"
#include "circuitforge/policy/series.hpp"

namespace circuitforge::policy {

/// Annualized repayment flow: stock ÷ (maturity in years), with maturity
/// interpolated linearly to each stock date and held flat past its ends.
/// Output covers stock dates inside the calendar years spanned by the
/// maturity series. Throws NoOverlap, NonPositiveMaturity, InvalidArgument
/// (wrong units).
Series normalize_principal_flow(const Series& stock, const Series& maturity);

/// Maturity value at `d` under the interpolation rule above.
Decimal interpolate(const Series& s, const Date& d);

struct AllocationConfig {
  Decimal local_frac = Decimal::parse("0.25");
  Decimal state_frac = Decimal::parse("0.25");
  Decimal federal_frac = Decimal::parse("0.5");
  Decimal bank_frac;
  bool include_consumer = false;

  /// Throws InvalidPolicy.
  void validate() const { to_policy().validate(); }
  ledger::CancellationPolicy to_policy() const {
    return {ledger::CancellationPolicy::Kind::AllocateToGovernment, local_frac, state_frac, federal_frac, bank_frac,
            include_consumer};
  }
};

AllocationConfig parse_allocation_config(std::string_view json_text);

struct Allocation {
  Series local;
  Series state;
  Series federal;
  Series bank;
};

/// Splits every point by largest remainder at micro-unit precision, so the
/// four parts always add back to the input exactly.
Allocation allocate_principal(const Series& flow, const AllocationConfig& cfg);
std::array<Decimal, 4> split_exact(Decimal value, const AllocationConfig& cfg);

/// receipts / tax × 100 at each date. Throws DateMismatch, DivisionByZeroDate.
Series tax_uplift(const Series& receipts, const Series& tax_revenue);
Decimal tax_uplift(Decimal receipts, Decimal tax_revenue);

// ---- ledger-driven scenarios

struct Cohort {
  int from = 0;
  int to = 0;
  int count = 1;
  Money principal;
  int term_periods = 1;
  ledger::LoanKind kind = ledger::LoanKind::Commercial;
  ledger::BorrowerType borrower_type = ledger::BorrowerType::EndBusinessBorrower;
  /// Links in the funding chain; only the last reaches the end borrower.
  int chain_depth = 1;
};

struct PolicyScenario {
  std::string currency = "$";
  int periods = 1;
  ledger::CancellationPolicy policy = ledger::CancellationPolicy::default_allocation();
  Decimal respend = Decimal::from_int(1);
  std::vector<Cohort> cohorts;
};

/// Throws InvalidConfig / ParseError.
PolicyScenario parse_policy_scenario(std::string_view json_text);

struct PeriodReport {
  int period = 0;
  Money originated;
  Money principal_repaid;
  Money gov_receipts;
  Money respend;
  Money money_supply;
  /// Indexed like ledger::kAllSectors.
  std::array<Money, 7> sector_equity;
};

struct PolicyReport {
  Money baseline_supply;
  std::vector<PeriodReport> periods;
  ledger::Ledger ledger;
};

/// Each period: scheduled level principal repayments, then the cohort's
/// originations, then government respending. Under allocation only eligible
/// loans go to government; the rest are cancelled.
PolicyReport run_policy_scenario(const PolicyScenario& scenario);

enum class Resolution { ConvertedAtBook, Haircut, FullLoss };
std::string_view to_string(Resolution r);

struct VentureOutcome {
  std::string loan_id;
  Money invested;
  Money realized_equity_value;
  Resolution resolution = Resolution::ConvertedAtBook;
  Money writedown;
};

struct VenturePortfolio {
  std::string currency = "$";
  std::vector<VentureOutcome> outcomes;
};

VenturePortfolio parse_portfolio(std::string_view json_text);

struct VentureReport {
  Money permanent_money_created;
  Money equity_booked;
  Money writedowns;
  Money reserves_before;
  Money reserves_after;
  /// Outcomes with realized equity values filled in.
  std::vector<VentureOutcome> outcomes;
  ledger::Ledger ledger;
};

/// Originates one at-risk loan per outcome, lets the venture spend it, then
/// resolves: book conversion, haircut followed by conversion of the rest, or a
/// full writedown.
VentureReport run_venture_portfolio(const VenturePortfolio& portfolio);

}  // namespace circuitforge::policy
