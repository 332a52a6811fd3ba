#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the library code it is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "circuitforge/ledger/ledger.hpp"
#include "circuitforge/policy/chain.hpp"

namespace oracle {

inline std::string data_path(const std::string& name) { return std::string(CIRCUITFORGE_DATA_DIR) + "/" + name; }

/// Year loop for the retained-profit model, in long double.
inline long double model2_loop(long double capital, int years, long double f, long double r) {
  long double paid = 0;
  for (int t = 0; t < years; ++t) {
    const long double profit = r * capital;
    paid += (1 - f) * profit;
    capital += f * profit;
  }
  return paid;
}

inline long double model2_capital_after(long double capital, int years, long double f, long double r) {
  for (int t = 0; t < years; ++t) capital += f * r * capital;
  return capital;
}

/// Year loop for the deposit model: loans of C(1+k), depositors get `share`
/// of the interest on the deposit-funded part, f·C is retained.
inline long double model3_loop(long double capital, int years, long double f, long double k, long double share,
                               long double r) {
  long double paid = 0;
  for (int t = 0; t < years; ++t) {
    const long double gross = r * capital * (1 + k);
    const long double to_depositors = share * r * capital * k;
    const long double retained = f * capital;
    paid += gross - to_depositors - retained;
    capital += retained;
  }
  return paid;
}

/// Plain bisection on a monotone increasing function.
inline long double solve_increasing(const std::function<long double(long double)>& g, long double target) {
  long double lo = 0, hi = 5;
  for (int i = 0; i < 300; ++i) {
    const long double mid = (lo + hi) / 2;
    (g(mid) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

/// Balances recomputed from the transaction log alone, in cents, using the
/// sign convention (assets debit-positive, the rest credit-positive).
inline std::map<std::string, std::int64_t> balances_from_log(const circuitforge::ledger::Ledger& l) {
  using namespace circuitforge::ledger;
  std::map<std::string, std::int64_t> out;
  for (const auto& [id, a] : l.accounts()) out[id] = 0;
  for (const auto& tx : l.transactions())
    for (const auto& p : tx.postings) {
      const bool asset = l.account(p.account_id).kind == AccountKind::Asset;
      const bool debit = p.side == Side::Debit;
      out[p.account_id] += (asset == debit) ? p.amount.cents() : -p.amount.cents();
    }
  return out;
}

/// Eligibility by enumerating every maximal path (source to sink). A loan is
/// chained if it appears before the end of any path; the final link of a
/// path is eligible only when its borrower is an end business borrower and
/// the kind passes the consumer rule.
inline std::map<std::string, circuitforge::policy::Eligibility> classify_by_paths(
    const circuitforge::policy::LoanGraph& g, bool include_consumer) {
  using namespace circuitforge;
  std::map<std::string, std::vector<std::string>> children;
  std::map<std::string, int> indeg;
  for (const auto& n : g.nodes) indeg[n.id] = 0;
  for (const auto& [p, c] : g.edges) {
    children[p].push_back(c);
    ++indeg[c];
  }
  std::set<std::string> upstream;
  std::set<std::string> terminal;
  std::function<void(const std::string&, std::vector<std::string>&)> walk = [&](const std::string& id,
                                                                               std::vector<std::string>& path) {
    path.push_back(id);
    if (children[id].empty()) {
      terminal.insert(id);
      for (std::size_t i = 0; i + 1 < path.size(); ++i) upstream.insert(path[i]);
    } else {
      for (const auto& c : children[id]) walk(c, path);
    }
    path.pop_back();
  };
  for (const auto& n : g.nodes)
    if (indeg[n.id] == 0) {
      std::vector<std::string> path;
      walk(n.id, path);
    }
  std::map<std::string, policy::Eligibility> out;
  for (const auto& n : g.nodes) {
    if (upstream.count(n.id)) {
      out[n.id] = policy::Eligibility::IneligibleChained;
      continue;
    }
    const bool business = n.tag == ledger::BorrowerType::EndBusinessBorrower;
    const bool kind_ok = n.kind != ledger::LoanKind::Consumer || include_consumer;
    out[n.id] = business && kind_ok && terminal.count(n.id) ? policy::Eligibility::Eligible
                                                            : policy::Eligibility::IneligibleNonBusiness;
  }
  return out;
}

/// True when some node reaches itself.
inline bool has_cycle(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (auto [a, b] : edges) reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
            reach[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
          reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  for (int i = 0; i < n; ++i)
    if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]) return true;
  return false;
}

}  // namespace oracle
