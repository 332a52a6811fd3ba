#include <gtest/gtest.h>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/error.hpp"
#include "circuitforge/policy/simulation.hpp"
#include "oracles.hpp"

using namespace circuitforge;
using namespace circuitforge::policy;
using ledger::CancellationPolicy;

namespace {

PolicyScenario bundled() {
  return parse_policy_scenario(dataio::read_text(oracle::data_path("policy_scenario.json")));
}

Money gov_equity(const PeriodReport& p) {
  return p.sector_equity[3] + p.sector_equity[4] + p.sector_equity[5];
}

}  // namespace

TEST(PolicyScenario, CancelKeepsSupplyAtOriginatedLessRepaid) {
  auto sc = bundled();
  sc.policy = CancellationPolicy::cancel();
  const auto rep = run_policy_scenario(sc);
  Money expect = rep.baseline_supply;
  for (const auto& p : rep.periods) {
    expect += p.originated - p.principal_repaid;
    EXPECT_EQ(p.money_supply, expect) << "period " << p.period;
    EXPECT_TRUE(p.gov_receipts.is_zero());
  }
}

TEST(PolicyScenario, AllocationAddsGovernmentReceipts) {
  const auto sc = bundled();
  ASSERT_EQ(sc.policy.kind, CancellationPolicy::Kind::AllocateToGovernment);
  const auto rep = run_policy_scenario(sc);
  Money expect = rep.baseline_supply;
  Money receipts = rep.baseline_supply.zero_like();
  for (const auto& p : rep.periods) {
    expect += p.originated - p.principal_repaid + p.gov_receipts;
    receipts += p.gov_receipts;
    EXPECT_EQ(p.money_supply, expect) << "period " << p.period;
    EXPECT_LE(p.gov_receipts, p.principal_repaid);
  }
  EXPECT_TRUE(receipts.is_positive());
  for (const auto& o : rep.ledger.owners()) EXPECT_TRUE(rep.ledger.entity_imbalance(o).is_zero()) << o;
  EXPECT_TRUE(rep.ledger.replay_matches());
}

TEST(PolicyScenario, OnlyEligibleLoansFeedGovernment) {
  const auto sc = bundled();
  const auto rep = run_policy_scenario(sc);
  // Recount from the journal: principal paid on loans that are eligible on their own.
  const auto& l = rep.ledger;
  Money eligible_paid = l.zero();
  Money total_receipts = l.zero();
  for (const auto& [id, loan] : l.loans())
    if (l.allocation_eligible(loan, sc.policy.include_consumer)) eligible_paid += loan.principal - loan.outstanding;
  for (const auto& p : rep.periods) total_receipts += p.gov_receipts;
  EXPECT_EQ(total_receipts, eligible_paid);
}

TEST(PolicyScenario, DifferentialAgainstCancel) {
  auto alloc = bundled();
  auto cancel = alloc;
  cancel.policy = CancellationPolicy::cancel();
  const auto ra = run_policy_scenario(alloc);
  const auto rc = run_policy_scenario(cancel);
  ASSERT_EQ(ra.periods.size(), rc.periods.size());
  Money cum = ra.baseline_supply.zero_like();
  for (std::size_t t = 0; t < ra.periods.size(); ++t) {
    cum += ra.periods[t].gov_receipts;
    EXPECT_EQ(ra.periods[t].principal_repaid, rc.periods[t].principal_repaid);
    EXPECT_EQ(ra.periods[t].money_supply - rc.periods[t].money_supply, cum) << "period " << t;
  }
}

TEST(PolicyScenario, NoRespendLeavesReceiptsWithGovernment) {
  auto sc = bundled();
  sc.respend = Decimal{};
  const auto rep = run_policy_scenario(sc);
  Money cum = rep.baseline_supply.zero_like();
  for (const auto& p : rep.periods) {
    cum += p.gov_receipts;
    EXPECT_TRUE(p.respend.is_zero());
    EXPECT_EQ(gov_equity(p), cum);
  }
}

TEST(PolicyScenario, SectorEquitiesOffset) {
  // Deposit-variant loans only: every asset here is someone else's liability.
  const auto rep = run_policy_scenario(bundled());
  for (const auto& p : rep.periods) {
    Money s = p.money_supply.zero_like();
    for (const auto& e : p.sector_equity) s += e;
    EXPECT_TRUE(s.is_zero()) << "period " << p.period << ": " << s.to_string();
  }
}

TEST(PolicyScenario, BadConfigs) {
  EXPECT_THROW((void)parse_policy_scenario(R"({"periods": 0})"), Error);
  EXPECT_THROW((void)parse_policy_scenario("not json"), Error);
}

TEST(Venture, PermanentMoneyAndUntouchedReserves) {
  const auto pf = parse_portfolio(dataio::read_text(oracle::data_path("portfolio.json")));
  const auto rep = run_venture_portfolio(pf);
  Money invested = rep.permanent_money_created.zero_like();
  for (const auto& o : pf.outcomes) invested += o.invested;
  EXPECT_EQ(rep.permanent_money_created, invested);
  EXPECT_EQ(rep.reserves_after, rep.reserves_before);
  EXPECT_EQ(rep.equity_booked + rep.writedowns, invested);
  for (const auto& o : rep.outcomes) {
    const auto& loan = rep.ledger.loan(o.loan_id);
    EXPECT_FALSE(loan.open()) << o.loan_id;
    EXPECT_EQ(o.realized_equity_value + o.writedown, o.invested) << o.loan_id;
  }
  EXPECT_TRUE(rep.ledger.replay_matches());
}

TEST(Venture, ResolutionsBookAsDescribed) {
  VenturePortfolio pf;
  pf.currency = "$";
  const Money none(0, "$");
  pf.outcomes = {{"A", Money(10000, "$"), none, Resolution::ConvertedAtBook, none},
                 {"B", Money(10000, "$"), none, Resolution::Haircut, Money(2500, "$")},
                 {"C", Money(10000, "$"), none, Resolution::FullLoss, none}};
  const auto rep = run_venture_portfolio(pf);
  EXPECT_EQ(rep.outcomes[0].realized_equity_value, Money(10000, "$"));
  EXPECT_EQ(rep.outcomes[1].realized_equity_value, Money(7500, "$"));
  EXPECT_EQ(rep.outcomes[2].realized_equity_value, Money(0, "$"));
  EXPECT_EQ(rep.writedowns, Money(12500, "$"));
  EXPECT_EQ(rep.ledger.balance("bank:holdings"), Money(17500, "$"));
}

TEST(Venture, WritedownAboveInvestmentIsRejected) {
  VenturePortfolio pf;
  pf.outcomes = {{"A", Money(100, "$"), Money(0, "$"), Resolution::Haircut, Money(101, "$")}};
  EXPECT_THROW((void)run_venture_portfolio(pf), Error);
}
