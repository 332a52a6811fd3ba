#include "circuitforge/policy/chain.hpp"

#include <deque>

#include "circuitforge/error.hpp"

namespace circuitforge::policy {

std::string_view to_string(Eligibility e) {
  switch (e) {
    case Eligibility::Eligible: return "Eligible";
    case Eligibility::IneligibleChained: return "IneligibleChained";
    case Eligibility::IneligibleNonBusiness: return "IneligibleNonBusiness";
  }
  return "?";
}

std::map<std::string, Eligibility> classify_chain(const LoanGraph& g, bool include_consumer) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (!index.emplace(g.nodes[i].id, i).second) throw Error(Errc::InvalidArgument, "duplicate loan " + g.nodes[i].id);

  const std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<int> indegree(n, 0);
  for (const auto& [parent, child] : g.edges) {
    auto p = index.find(parent);
    auto c = index.find(child);
    if (p == index.end()) throw Error(Errc::UnknownLoan, parent);
    if (c == index.end()) throw Error(Errc::UnknownLoan, child);
    children[p->second].push_back(c->second);
    ++indegree[c->second];
  }

  // Kahn's algorithm; anything left unvisited sits on a cycle.
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const std::size_t u = ready.front();
    ready.pop_front();
    ++visited;
    for (std::size_t v : children[u])
      if (--indegree[v] == 0) ready.push_back(v);
  }
  if (visited != n) {
    for (std::size_t i = 0; i < n; ++i)
      if (indegree[i] > 0) throw Error(Errc::CycleDetected, "loan " + g.nodes[i].id + " is on a funding cycle");
  }

  std::map<std::string, Eligibility> out;
  for (std::size_t i = 0; i < n; ++i) {
    const ChainNode& node = g.nodes[i];
    Eligibility e = Eligibility::Eligible;
    if (!children[i].empty())
      e = Eligibility::IneligibleChained;
    else if (node.tag == ledger::BorrowerType::Intermediary ||
             (node.kind == ledger::LoanKind::Consumer && !include_consumer))
      e = Eligibility::IneligibleNonBusiness;
    out[node.id] = e;
  }
  return out;
}

LoanGraph graph_of(const ledger::Ledger& l) {
  LoanGraph g;
  for (const auto& [id, loan] : l.loans()) {
    g.nodes.push_back({id, loan.kind, loan.borrower_type});
    if (loan.chain_parent) g.edges.push_back({*loan.chain_parent, id});
  }
  return g;
}

}  // namespace circuitforge::policy
