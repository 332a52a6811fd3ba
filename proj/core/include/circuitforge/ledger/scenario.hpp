#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "circuitforge/ledger/ledger.hpp"

namespace circuitforge::ledger {

/// A report column. `account` is an account id, `@money_supply`, or
/// `@equity:<Sector>`.
struct Column {
  std::string label;
  std::string account;
};

struct StepRow {
  std::size_t index = 0;
  std::string label;
  std::vector<Money> deltas;
};

struct ReplayResult {
  Ledger ledger;
  std::vector<Column> columns;
  std::vector<StepRow> rows;
  std::vector<Money> totals;
};

/// Runs a scenario document. Step failures are rethrown with the same error
/// code and a message starting "step N (label)".
ReplayResult replay_scenario(std::string_view json_text);
ReplayResult replay_scenario_file(const std::string& path);

/// Current value of a report column.
Money column_value(const Ledger& l, const std::string& account);

}  // namespace circuitforge::ledger
