#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "circuitforge/decimal.hpp"
#include "circuitforge/error.hpp"
#include "circuitforge/ledger/ledger.hpp"
#include "circuitforge/money.hpp"
#include "json.hpp"

namespace circuitforge::detail {

using nlohmann::json;

inline json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, what + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoFailure, "cannot read " + path);
  return ss.str();
}

inline const json& require(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidConfig, ctx + ": missing '" + key + "'");
  return j.at(key);
}

/// Numbers are read through their shortest text form so 0.38 stays 0.38.
inline std::string number_text(const json& j, const std::string& ctx) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw Error(Errc::InvalidConfig, ctx + ": expected a number");
}

inline Decimal decimal_of(const json& j, const std::string& ctx) {
  try {
    return Decimal::parse(number_text(j, ctx));
  } catch (const Error& e) {
    throw Error(Errc::InvalidConfig, ctx + ": " + e.what());
  }
}

inline Money money_of(const json& j, const std::string& currency, const std::string& ctx) {
  try {
    return Money::parse(number_text(j, ctx), currency);
  } catch (const Error& e) {
    throw Error(Errc::InvalidConfig, ctx + ": " + e.what());
  }
}

inline std::string string_of(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw Error(Errc::InvalidConfig, ctx + ": expected a string");
  return j.get<std::string>();
}

/// Either a bare kind name or {"kind": ..., "local": .., "state": .., "federal": .., "bank": .., "include_consumer": ..}.
inline ledger::CancellationPolicy policy_of(const json& j, const std::string& ctx) {
  using ledger::CancellationPolicy;
  if (j.is_string()) {
    const auto kind = ledger::parse_policy_kind(j.get<std::string>());
    if (kind == CancellationPolicy::Kind::AllocateToGovernment) return CancellationPolicy::default_allocation();
    CancellationPolicy p;
    p.kind = kind;
    return p;
  }
  if (!j.is_object()) throw Error(Errc::InvalidConfig, ctx + ": policy must be a string or object");
  CancellationPolicy p;
  p.kind = ledger::parse_policy_kind(string_of(require(j, "kind", ctx), ctx + ".kind"));
  if (p.kind == CancellationPolicy::Kind::AllocateToGovernment) {
    const auto def = CancellationPolicy::default_allocation();
    p.local_frac = j.contains("local") ? decimal_of(j["local"], ctx + ".local") : def.local_frac;
    p.state_frac = j.contains("state") ? decimal_of(j["state"], ctx + ".state") : def.state_frac;
    p.federal_frac = j.contains("federal") ? decimal_of(j["federal"], ctx + ".federal") : def.federal_frac;
    p.bank_frac = j.contains("bank") ? decimal_of(j["bank"], ctx + ".bank") : def.bank_frac;
    p.include_consumer = j.value("include_consumer", false);
  }
  p.validate();
  return p;
}

}  // namespace circuitforge::detail
