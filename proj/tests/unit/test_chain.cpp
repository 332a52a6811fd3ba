#include <gtest/gtest.h>

#include <random>

#include "circuitforge/error.hpp"
#include "circuitforge/policy/chain.hpp"
#include "oracles.hpp"

using namespace circuitforge;
using namespace circuitforge::policy;
using ledger::BorrowerType;
using ledger::LoanKind;

namespace {

LoanGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges, std::uint64_t labels) {
  LoanGraph g;
  for (int i = 0; i < n; ++i) {
    // Two bits per node pick the borrower tag and whether the loan is a consumer loan.
    const auto bits = (labels >> (2 * i)) & 3u;
    g.nodes.push_back({"n" + std::to_string(i), bits & 1u ? LoanKind::Consumer : LoanKind::Commercial,
                       bits & 2u ? BorrowerType::Intermediary : BorrowerType::EndBusinessBorrower});
  }
  for (auto [a, b] : edges) g.edges.push_back({"n" + std::to_string(a), "n" + std::to_string(b)});
  return g;
}

}  // namespace

// Every DAG up to six nodes, taking edges only forward in a fixed order; any
// labelled DAG is a relabelling of one of these.
TEST(Chain, AgreesWithPathEnumerationOnAllSmallDags) {
  std::mt19937_64 rng(5);
  long graphs = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
    const std::uint32_t masks = 1u << slots.size();
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (mask & (1u << s)) edges.push_back(slots[s]);
      const auto g = make_graph(n, edges, rng());
      for (bool consumer : {false, true}) {
        const auto got = classify_chain(g, consumer);
        const auto want = oracle::classify_by_paths(g, consumer);
        ASSERT_EQ(got, want) << "n=" << n << " mask=" << mask;
      }
      ++graphs;
    }
  }
  EXPECT_EQ(graphs, 1 + 2 + 8 + 64 + 1024 + 32768);
}

TEST(Chain, CyclesAreRejected) {
  std::mt19937_64 rng(6);
  int cyclic = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = static_cast<int>(rng() % 6) + 1;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (rng() % 5 == 0) edges.push_back({a, b});
    const auto g = make_graph(n, edges, rng());
    if (oracle::has_cycle(n, edges)) {
      ++cyclic;
      try {
        (void)classify_chain(g);
        FAIL() << "cycle not detected";
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), Errc::CycleDetected);
      }
    } else {
      ASSERT_EQ(classify_chain(g), oracle::classify_by_paths(g, false));
    }
  }
  EXPECT_GT(cyclic, 100);
}

TEST(Chain, ThreeLinkChainOnlyLastIsEligible) {
  LoanGraph g;
  g.nodes = {{"a", LoanKind::Commercial, BorrowerType::Intermediary},
             {"b", LoanKind::Commercial, BorrowerType::Intermediary},
             {"c", LoanKind::Commercial, BorrowerType::EndBusinessBorrower}};
  g.edges = {{"a", "b"}, {"b", "c"}};
  const auto r = classify_chain(g);
  EXPECT_EQ(r.at("a"), Eligibility::IneligibleChained);
  EXPECT_EQ(r.at("b"), Eligibility::IneligibleChained);
  EXPECT_EQ(r.at("c"), Eligibility::Eligible);
}

TEST(Chain, ConsumerLoansNeedTheFlag) {
  LoanGraph g;
  g.nodes = {{"c", LoanKind::Consumer, BorrowerType::EndBusinessBorrower}};
  EXPECT_EQ(classify_chain(g, false).at("c"), Eligibility::IneligibleNonBusiness);
  EXPECT_EQ(classify_chain(g, true).at("c"), Eligibility::Eligible);
}

TEST(Chain, BadReferences) {
  LoanGraph g;
  g.nodes = {{"a", LoanKind::Commercial, BorrowerType::EndBusinessBorrower}};
  g.edges = {{"a", "ghost"}};
  EXPECT_THROW((void)classify_chain(g), Error);
  LoanGraph dup;
  dup.nodes = {{"a", LoanKind::Commercial, BorrowerType::EndBusinessBorrower},
               {"a", LoanKind::Commercial, BorrowerType::EndBusinessBorrower}};
  EXPECT_THROW((void)classify_chain(dup), Error);
}

TEST(Chain, GraphOfLedgerFollowsChainParents) {
  ledger::Ledger l;
  l.add_party("i", ledger::Sector::Borrower);
  l.add_party("f", ledger::Sector::Borrower);
  ledger::Loan p;
  p.id = "P";
  p.borrower = "i";
  p.principal = l.money(1000);
  p.variant = ledger::OriginationVariant::Deposit;
  p.borrower_type = BorrowerType::Intermediary;
  l.originate_loan(p);
  ledger::Loan c = p;
  c.id = "C";
  c.borrower = "f";
  c.borrower_type = BorrowerType::EndBusinessBorrower;
  c.chain_parent = "P";
  l.originate_loan(c);
  const auto g = graph_of(l);
  ASSERT_EQ(g.nodes.size(), 2u);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0], (std::pair<std::string, std::string>{"P", "C"}));
  const auto r = classify_chain(g);
  EXPECT_EQ(r.at("P"), Eligibility::IneligibleChained);
  EXPECT_EQ(r.at("C"), Eligibility::Eligible);
  EXPECT_FALSE(l.allocation_eligible(l.loan("P"), false));
  EXPECT_TRUE(l.allocation_eligible(l.loan("C"), false));
}
