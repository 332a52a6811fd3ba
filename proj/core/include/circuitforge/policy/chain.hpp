#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circuitforge/ledger/ledger.hpp"

namespace circuitforge::policy {

struct ChainNode {
  std::string id;
  ledger::LoanKind kind = ledger::LoanKind::Commercial;
  ledger::BorrowerType tag = ledger::BorrowerType::EndBusinessBorrower;
};

/// Edges run parent → child: the child loan was funded by the parent's proceeds.
struct LoanGraph {
  std::vector<ChainNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
};

enum class Eligibility { Eligible, IneligibleChained, IneligibleNonBusiness };

std::string_view to_string(Eligibility e);

/// A loan is Eligible when its borrower is an end business borrower and no
/// other loan was funded from it. Consumer loans count as non-business unless
/// `include_consumer`. Throws CycleDetected, UnknownLoan, InvalidArgument.
std::map<std::string, Eligibility> classify_chain(const LoanGraph& graph, bool include_consumer = false);

/// The loans of a ledger and their chain_parent links.
LoanGraph graph_of(const ledger::Ledger& l);

}  // namespace circuitforge::policy
