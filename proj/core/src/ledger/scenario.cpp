#include "circuitforge/ledger/scenario.hpp"

#include "../detail/json_util.hpp"

namespace circuitforge::ledger {

using detail::json;

Money column_value(const Ledger& l, const std::string& account) {
  if (account == "@money_supply") return l.money_supply();
  if (account.rfind("@equity:", 0) == 0) return l.sector_equity(parse_sector(account.substr(8)));
  return l.balance(account);
}

namespace {

LedgerConfig config_of(const json& doc) {
  LedgerConfig c;
  if (doc.contains("currency")) c.currency = detail::string_of(doc["currency"], "currency");
  if (doc.contains("bank")) c.bank = detail::string_of(doc["bank"], "bank");
  if (doc.contains("day_basis")) c.day_basis = doc["day_basis"].get<int>();
  if (doc.contains("funds_check")) {
    const auto f = detail::string_of(doc["funds_check"], "funds_check");
    if (f == "fail")
      c.funds_check = FundsCheck::Fail;
    else if (f == "warn")
      c.funds_check = FundsCheck::Warn;
    else
      throw Error(Errc::InvalidConfig, "funds_check must be 'fail' or 'warn'");
  }
  return c;
}

Transaction transaction_of(const json& step, const Ledger& l, const std::string& ctx) {
  Transaction tx;
  tx.memo = step.value("memo", step.value("label", std::string("transfer")));
  for (const json& p : detail::require(step, "postings", ctx)) {
    Posting post;
    post.account_id = detail::string_of(detail::require(p, "account", ctx), ctx + ".account");
    post.side = parse_side(detail::string_of(detail::require(p, "side", ctx), ctx + ".side"));
    const std::string cur = p.contains("currency") ? detail::string_of(p["currency"], ctx) : l.config().currency;
    post.amount = detail::money_of(detail::require(p, "amount", ctx), cur, ctx + ".amount");
    tx.postings.push_back(std::move(post));
  }
  return tx;
}

Loan loan_of(const json& j, const Ledger& l, const std::string& ctx) {
  Loan loan;
  loan.id = detail::string_of(detail::require(j, "id", ctx), ctx + ".id");
  loan.borrower = detail::string_of(detail::require(j, "borrower", ctx), ctx + ".borrower");
  loan.principal = detail::money_of(detail::require(j, "principal", ctx), l.config().currency, ctx + ".principal");
  if (j.contains("coin_fraction")) loan.coin_fraction = detail::decimal_of(j["coin_fraction"], ctx + ".coin_fraction");
  if (j.contains("annual_rate")) loan.annual_rate = detail::decimal_of(j["annual_rate"], ctx + ".annual_rate");
  if (j.contains("term_days")) loan.term_days = j["term_days"].get<int>();
  if (j.contains("kind")) loan.kind = parse_loan_kind(detail::string_of(j["kind"], ctx + ".kind"));
  if (j.contains("variant")) loan.variant = parse_variant(detail::string_of(j["variant"], ctx + ".variant"));
  if (j.contains("chain_parent")) loan.chain_parent = detail::string_of(j["chain_parent"], ctx + ".chain_parent");
  if (j.contains("borrower_type"))
    loan.borrower_type = parse_borrower_type(detail::string_of(j["borrower_type"], ctx + ".borrower_type"));
  if (j.contains("origination")) loan.origination = Date::parse(detail::string_of(j["origination"], ctx));
  return loan;
}

PaymentOptions payment_of(const json& step, const std::string& ctx) {
  PaymentOptions o;
  if (step.contains("medium")) o.medium = parse_medium(detail::string_of(step["medium"], ctx + ".medium"));
  if (step.contains("settlement"))
    o.settlement = parse_settlement(detail::string_of(step["settlement"], ctx + ".settlement"));
  if (step.contains("policy")) o.policy = detail::policy_of(step["policy"], ctx + ".policy");
  return o;
}

void run_step(Ledger& l, const json& step, const std::string& ctx) {
  const std::string op = detail::string_of(detail::require(step, "op", ctx), ctx + ".op");
  if (step.contains("date")) l.set_date(Date::parse(detail::string_of(step["date"], ctx + ".date")));
  const std::string cur = l.config().currency;
  auto loan_id = [&] { return detail::string_of(detail::require(step, "loan", ctx), ctx + ".loan"); };
  auto amount = [&](const char* key) { return detail::money_of(detail::require(step, key, ctx), cur, ctx + "." + key); };

  if (op == "transfer") {
    l.post(transaction_of(step, l, ctx));
  } else if (op == "originate") {
    l.originate_loan(loan_of(detail::require(step, "loan", ctx), l, ctx + ".loan"));
  } else if (op == "accrue") {
    l.book_interest(loan_id(), detail::require(step, "days", ctx).get<int>());
  } else if (op == "pay_interest") {
    l.pay_interest(loan_id(), amount("amount"), payment_of(step, ctx));
  } else if (op == "pay_principal") {
    l.pay_principal(loan_id(), amount("amount"), payment_of(step, ctx));
  } else if (op == "convert_to_equity") {
    l.convert_to_equity(loan_id(), amount("equity_value"));
  } else if (op == "haircut") {
    l.haircut(loan_id(), amount("writedown"));
  } else if (op == "charge_off") {
    l.charge_off(loan_id());
  } else if (op == "close_period") {
    l.close_period();
  } else if (op == "set_policy") {
    l.set_policy(detail::policy_of(detail::require(step, "policy", ctx), ctx + ".policy"));
  } else {
    throw Error(Errc::InvalidConfig, ctx + ": unknown op '" + op + "'");
  }
}

}  // namespace

ReplayResult replay_scenario(std::string_view json_text) {
  const json doc = detail::parse_json(json_text, "scenario");
  if (!doc.is_object()) throw Error(Errc::InvalidConfig, "scenario must be a JSON object");

  std::optional<Ledger> built;
  std::vector<Column> columns;
  try {
    CancellationPolicy pol;
    if (doc.contains("policy")) pol = detail::policy_of(doc["policy"], "policy");
    built.emplace(config_of(doc), pol);
    Ledger& l = *built;
    if (doc.contains("start_date")) l.set_date(Date::parse(detail::string_of(doc["start_date"], "start_date")));
    for (const json& p : doc.value("parties", json::array()))
      l.add_party(detail::string_of(detail::require(p, "name", "parties"), "parties.name"),
                  parse_sector(detail::string_of(detail::require(p, "sector", "parties"), "parties.sector")));
    for (const json& a : doc.value("accounts", json::array()))
      l.open_account(detail::string_of(detail::require(a, "id", "accounts"), "accounts.id"),
                     parse_account_kind(detail::string_of(detail::require(a, "kind", "accounts"), "accounts.kind")),
                     parse_sector(detail::string_of(detail::require(a, "sector", "accounts"), "accounts.sector")),
                     a.value("monetary", false));
    if (doc.contains("columns")) {
      for (const json& c : doc["columns"]) {
        if (c.is_string()) {
          columns.push_back({c.get<std::string>(), c.get<std::string>()});
        } else {
          columns.push_back({detail::string_of(detail::require(c, "label", "columns"), "columns.label"),
                             detail::string_of(detail::require(c, "account", "columns"), "columns.account")});
        }
        column_value(l, columns.back().account);
      }
    } else {
      for (const auto& id : l.account_order()) columns.push_back({id, id});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("scenario header: ") + e.what());
  }

  ReplayResult r{std::move(*built), std::move(columns), {}, {}};
  Ledger& l = r.ledger;
  std::vector<Money> prev;
  for (const auto& c : r.columns) prev.push_back(column_value(l, c.account));

  const json steps = doc.value("steps", json::array());
  if (!steps.is_array()) throw Error(Errc::InvalidConfig, "steps must be an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const json& step = steps[i];
    const std::string label = step.is_object() ? step.value("label", step.value("op", std::string("?"))) : "?";
    const std::string ctx = "step " + std::to_string(i + 1) + " (" + label + ")";
    try {
      run_step(l, step, ctx);
    } catch (const Error& e) {
      const std::string what = e.what();
      const std::string prefix = std::string(to_string(e.code())) + ": ";
      const std::string msg = what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
      throw Error(e.code(), msg.rfind("step ", 0) == 0 ? msg : ctx + ": " + msg);
    } catch (const json::exception& e) {
      throw Error(Errc::InvalidConfig, ctx + ": " + e.what());
    }
    StepRow row{i + 1, label, {}};
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      const Money now = column_value(l, r.columns[c].account);
      row.deltas.push_back(now - prev[c]);
      prev[c] = now;
    }
    r.rows.push_back(std::move(row));
  }
  r.totals = prev;
  return r;
}

ReplayResult replay_scenario_file(const std::string& path) { return replay_scenario(detail::read_file(path)); }

}  // namespace circuitforge::ledger
