#include "circuitforge/policy/simulation.hpp"

#include <algorithm>
#include <map>

#include "../detail/json_util.hpp"
#include "circuitforge/error.hpp"

namespace circuitforge::policy {

using detail::json;
using ledger::CancellationPolicy;
using ledger::Ledger;

Decimal interpolate(const Series& s, const Date& d) {
  const auto& p = s.points();
  if (p.empty()) throw Error(Errc::EmptySeries, "cannot interpolate an empty series");
  if (!(p.front().date < d)) return p.front().value;
  if (!(d < p.back().date)) return p.back().value;
  auto hi = std::upper_bound(p.begin(), p.end(), d, [](const Date& x, const Point& pt) { return x < pt.date; });
  auto lo = hi - 1;
  if (lo->date == d) return lo->value;
  const long span = hi->date.days_since(lo->date);
  const long off = d.days_since(lo->date);
  const int128 delta = static_cast<int128>(hi->value.micros() - lo->value.micros()) * off;
  return Decimal::from_micros(lo->value.micros() + div_round_half_up(delta, span));
}

Series normalize_principal_flow(const Series& stock, const Series& maturity) {
  if (stock.unit() != Unit::CurrencyBillions) throw Error(Errc::InvalidArgument, "stock must be in currency-billions");
  if (maturity.unit() != Unit::Months) throw Error(Errc::InvalidArgument, "maturity must be in months");
  if (stock.empty() || maturity.empty()) throw Error(Errc::NoOverlap, "empty input series");
  for (const auto& m : maturity.points())
    if (!(m.value > Decimal{}))
      throw Error(Errc::NonPositiveMaturity, "maturity " + m.value.to_string(2) + " on " + m.date.to_string());
  const int y0 = maturity.points().front().date.year();
  const int y1 = maturity.points().back().date.year();
  std::vector<Point> out;
  for (const auto& s : stock.points()) {
    if (s.date.year() < y0 || s.date.year() > y1) continue;
    const Decimal months = interpolate(maturity, s.date);
    out.push_back({s.date, (s.value * Decimal::from_int(12)) / months});
  }
  if (out.empty())
    throw Error(Errc::NoOverlap, "no stock observation falls within " + std::to_string(y0) + ".." + std::to_string(y1));
  return Series(Unit::CurrencyBillionsPerYear, std::move(out));
}

AllocationConfig parse_allocation_config(std::string_view text) {
  const json j = detail::parse_json(text, "allocation config");
  try {
    const json& a = j.contains("allocation") ? j["allocation"] : j;
    AllocationConfig c;
    if (a.contains("local")) c.local_frac = detail::decimal_of(a["local"], "local");
    if (a.contains("state")) c.state_frac = detail::decimal_of(a["state"], "state");
    if (a.contains("federal")) c.federal_frac = detail::decimal_of(a["federal"], "federal");
    if (a.contains("bank")) c.bank_frac = detail::decimal_of(a["bank"], "bank");
    c.include_consumer = a.value("include_consumer", false);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("allocation config: ") + e.what());
  }
}

std::array<Decimal, 4> split_exact(Decimal value, const AllocationConfig& cfg) {
  cfg.validate();
  const bool neg = value < Decimal{};
  const std::int64_t v = neg ? -value.micros() : value.micros();
  const Decimal fr[4] = {cfg.local_frac, cfg.state_frac, cfg.federal_frac, cfg.bank_frac};
  std::array<std::int64_t, 4> part{};
  std::array<std::pair<std::int64_t, int>, 4> rem{};
  std::int64_t used = 0;
  for (int i = 0; i < 4; ++i) {
    const int128 exact = static_cast<int128>(v) * fr[i].micros();
    part[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(exact / Decimal::kScale);
    rem[static_cast<std::size_t>(i)] = {static_cast<std::int64_t>(exact % Decimal::kScale), i};
    used += part[static_cast<std::size_t>(i)];
  }
  std::stable_sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < v; ++k, ++used) ++part[static_cast<std::size_t>(rem[k % 4].second)];
  std::array<Decimal, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = Decimal::from_micros(neg ? -part[i] : part[i]);
  return out;
}

Allocation allocate_principal(const Series& flow, const AllocationConfig& cfg) {
  cfg.validate();
  std::vector<Point> parts[4];
  for (const auto& p : flow.points()) {
    const auto s = split_exact(p.value, cfg);
    for (std::size_t i = 0; i < 4; ++i) parts[i].push_back({p.date, s[i]});
  }
  return {Series(flow.unit(), parts[0]), Series(flow.unit(), parts[1]), Series(flow.unit(), parts[2]),
          Series(flow.unit(), parts[3])};
}

Decimal tax_uplift(Decimal receipts, Decimal tax) {
  if (tax == Decimal{}) throw Error(Errc::DivisionByZeroDate, "tax revenue is zero");
  return (receipts * Decimal::from_int(100)) / tax;
}

Series tax_uplift(const Series& receipts, const Series& tax) {
  if (receipts.size() != tax.size()) throw Error(Errc::DateMismatch, "series have different lengths");
  std::vector<Point> out;
  for (std::size_t i = 0; i < receipts.size(); ++i) {
    const auto& r = receipts.points()[i];
    const auto& t = tax.points()[i];
    if (!(r.date == t.date))
      throw Error(Errc::DateMismatch, r.date.to_string() + " does not match " + t.date.to_string());
    if (t.value == Decimal{}) throw Error(Errc::DivisionByZeroDate, "tax revenue is zero on " + t.date.to_string());
    out.push_back({r.date, tax_uplift(r.value, t.value)});
  }
  return Series(Unit::Percent, std::move(out));
}

// ---- policy scenario

PolicyScenario parse_policy_scenario(std::string_view text) {
  const json j = detail::parse_json(text, "policy scenario");
  try {
    PolicyScenario s;
    if (j.contains("currency")) s.currency = detail::string_of(j["currency"], "currency");
    s.periods = detail::require(j, "periods", "scenario").get<int>();
    if (s.periods <= 0) throw Error(Errc::InvalidConfig, "periods must be positive");
    if (j.contains("policy")) s.policy = detail::policy_of(j["policy"], "policy");
    if (j.contains("allocation")) {
      if (s.policy.kind != CancellationPolicy::Kind::AllocateToGovernment)
        throw Error(Errc::InvalidConfig, "allocation given but policy is not AllocateToGovernment");
      s.policy = parse_allocation_config(j["allocation"].dump()).to_policy();
    }
    if (s.policy.kind == CancellationPolicy::Kind::VentureRetain)
      throw Error(Errc::InvalidConfig, "use a venture portfolio for VentureRetain");
    if (j.contains("respend")) s.respend = detail::decimal_of(j["respend"], "respend");
    if (s.respend < Decimal{} || s.respend > Decimal::from_int(1))
      throw Error(Errc::InvalidConfig, "respend must be in [0, 1]");
    for (const json& c : detail::require(j, "cohorts", "scenario")) {
      Cohort co;
      co.from = c.value("from", 0);
      co.to = c.value("to", co.from);
      co.count = c.value("count", 1);
      co.principal = detail::money_of(detail::require(c, "principal", "cohort"), s.currency, "cohort.principal");
      co.term_periods = c.value("term_periods", 1);
      if (c.contains("kind")) co.kind = ledger::parse_loan_kind(detail::string_of(c["kind"], "cohort.kind"));
      if (c.contains("borrower_type"))
        co.borrower_type = ledger::parse_borrower_type(detail::string_of(c["borrower_type"], "cohort.borrower_type"));
      co.chain_depth = c.value("chain_depth", 1);
      if (co.from < 0 || co.to < co.from || co.count < 0 || co.term_periods <= 0 || co.chain_depth <= 0)
        throw Error(Errc::InvalidConfig, "cohort has an invalid range, count, term or chain depth");
      if (co.kind == ledger::LoanKind::AtRiskVenture)
        throw Error(Errc::InvalidConfig, "venture loans belong in a venture portfolio");
      s.cohorts.push_back(co);
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("policy scenario: ") + e.what());
  }
}

namespace {

struct Schedule {
  std::string loan_id;
  int first_period = 0;
  int term = 1;
  Money installment;
};

}  // namespace

PolicyReport run_policy_scenario(const PolicyScenario& sc) {
  ledger::LedgerConfig cfg;
  cfg.currency = sc.currency;
  Ledger l(cfg, CancellationPolicy::cancel());
  l.set_date(Date(2000, 1, 1));
  l.add_party("households", ledger::Sector::Depositor);
  l.add_party(cfg.gov_local, ledger::Sector::GovernmentLocal);
  l.add_party(cfg.gov_state, ledger::Sector::GovernmentState);
  l.add_party(cfg.gov_federal, ledger::Sector::GovernmentFederal);
  for (std::size_t c = 0; c < sc.cohorts.size(); ++c) {
    l.add_party("firm" + std::to_string(c + 1), ledger::Sector::Borrower);
    if (sc.cohorts[c].chain_depth > 1) l.add_party("inter" + std::to_string(c + 1), ledger::Sector::Borrower);
  }
  const std::string govs[3] = {cfg.gov_local, cfg.gov_state, cfg.gov_federal};

  PolicyReport rep{l.money_supply(), {}, l};
  std::vector<Schedule> schedule;
  int serial = 0;
  for (int t = 0; t < sc.periods; ++t) {
    l.set_date(Date(2000, 1, 1).add_days(30L * t));
    PeriodReport pr;
    pr.period = t;
    pr.originated = pr.principal_repaid = pr.gov_receipts = pr.respend = l.zero();

    std::array<Money, 3> gov_before;
    for (int g = 0; g < 3; ++g) gov_before[static_cast<std::size_t>(g)] = l.balance(Ledger::party_account(govs[g], "deposit"));

    for (const Schedule& s : schedule) {
      if (t < s.first_period || t >= s.first_period + s.term) continue;
      const auto& loan = l.loan(s.loan_id);
      if (!loan.open()) continue;
      const Money amount = t == s.first_period + s.term - 1 ? loan.outstanding : std::min(s.installment, loan.outstanding);
      if (!amount.is_positive()) continue;
      ledger::PaymentOptions opt;
      if (sc.policy.kind == CancellationPolicy::Kind::AllocateToGovernment)
        opt.policy = l.allocation_eligible(loan, sc.policy.include_consumer) ? sc.policy : CancellationPolicy::cancel();
      else
        opt.policy = sc.policy;
      l.pay_principal(s.loan_id, amount, opt);
      pr.principal_repaid += amount;
    }

    for (std::size_t c = 0; c < sc.cohorts.size(); ++c) {
      const Cohort& co = sc.cohorts[c];
      if (t < co.from || t > co.to) continue;
      for (int i = 0; i < co.count; ++i) {
        std::optional<std::string> parent;
        for (int link = 1; link <= co.chain_depth; ++link) {
          const bool last = link == co.chain_depth;
          ledger::Loan loan;
          loan.id = "P" + std::to_string(++serial);
          loan.borrower = (last ? "firm" : "inter") + std::to_string(c + 1);
          loan.principal = co.principal;
          loan.term_days = 30 * co.term_periods;
          loan.kind = co.kind;
          loan.borrower_type = last ? co.borrower_type : ledger::BorrowerType::Intermediary;
          loan.variant = ledger::OriginationVariant::Deposit;
          loan.chain_parent = parent;
          l.originate_loan(loan);
          pr.originated += co.principal;
          const Money inst(co.principal.cents() / co.term_periods, sc.currency);
          schedule.push_back({loan.id, t + 1, co.term_periods, inst});
          parent = loan.id;
        }
      }
    }

    for (int g = 0; g < 3; ++g) {
      const std::string acct = Ledger::party_account(govs[g], "deposit");
      const Money got = l.balance(acct) - gov_before[static_cast<std::size_t>(g)];
      pr.gov_receipts += got;
      const Money spend = got * sc.respend;
      if (!spend.is_positive()) continue;
      ledger::Transaction tx;
      tx.memo = "Government respending";
      tx.postings = {{acct, ledger::Side::Credit, spend},
                     {Ledger::party_account(govs[g], "equity"), ledger::Side::Debit, spend},
                     {"households:deposit", ledger::Side::Debit, spend},
                     {"households:equity", ledger::Side::Credit, spend}};
      l.post(tx);
      pr.respend += spend;
    }

    pr.money_supply = l.money_supply();
    for (std::size_t k = 0; k < 7; ++k) pr.sector_equity[k] = l.sector_equity(ledger::kAllSectors[k]);
    rep.periods.push_back(pr);
  }
  rep.ledger = std::move(l);
  return rep;
}

// ---- venture portfolio

std::string_view to_string(Resolution r) {
  switch (r) {
    case Resolution::ConvertedAtBook: return "ConvertedAtBook";
    case Resolution::Haircut: return "Haircut";
    case Resolution::FullLoss: return "FullLoss";
  }
  return "?";
}

VenturePortfolio parse_portfolio(std::string_view text) {
  const json j = detail::parse_json(text, "portfolio");
  try {
    VenturePortfolio p;
    if (j.contains("currency")) p.currency = detail::string_of(j["currency"], "currency");
    for (const json& o : detail::require(j, "outcomes", "portfolio")) {
      VentureOutcome v;
      v.loan_id = detail::string_of(detail::require(o, "loan_id", "outcome"), "outcome.loan_id");
      v.invested = detail::money_of(detail::require(o, "invested", "outcome"), p.currency, "outcome.invested");
      const std::string r = detail::string_of(detail::require(o, "resolution", "outcome"), "outcome.resolution");
      if (r == "ConvertedAtBook")
        v.resolution = Resolution::ConvertedAtBook;
      else if (r == "Haircut")
        v.resolution = Resolution::Haircut;
      else if (r == "FullLoss")
        v.resolution = Resolution::FullLoss;
      else
        throw Error(Errc::InvalidConfig, "unknown resolution '" + r + "'");
      v.writedown = v.resolution == Resolution::Haircut
                        ? detail::money_of(detail::require(o, "writedown", "outcome"), p.currency, "outcome.writedown")
                        : Money(0, p.currency);
      if (v.writedown.is_negative() || v.writedown > v.invested)
        throw Error(Errc::InvalidConfig, v.loan_id + ": writedown must be within [0, invested]");
      p.outcomes.push_back(v);
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("portfolio: ") + e.what());
  }
}

VentureReport run_venture_portfolio(const VenturePortfolio& pf) {
  ledger::LedgerConfig cfg;
  cfg.currency = pf.currency;
  Ledger l(cfg, CancellationPolicy::venture_retain());
  l.add_party("suppliers", ledger::Sector::Depositor);
  // Opening reserves so that "unchanged" is a statement about a non-zero balance.
  const Money opening(100000, pf.currency);
  l.post({"", {}, {{"bank:reserves", ledger::Side::Debit, opening}, {"bank:capital", ledger::Side::Credit, opening}},
          "Opening capital", ledger::MoneyEvent::Transfer});

  VentureReport rep{l.zero(), l.zero(), l.zero(), l.balance("bank:reserves"), l.zero(), {}, l};
  const Money supply_before = l.money_supply();
  std::map<std::string, bool> seen;
  int n = 0;
  for (VentureOutcome o : pf.outcomes) {
    if (!seen.emplace(o.loan_id, true).second) throw Error(Errc::DuplicateLoan, o.loan_id);
    if (!o.invested.is_positive()) throw Error(Errc::NonPositivePrincipal, o.loan_id);
    if (o.writedown > o.invested) throw Error(Errc::Overwrite, o.loan_id);
    const std::string venture = "venture" + std::to_string(++n);
    l.add_party(venture, ledger::Sector::Borrower);
    ledger::Loan loan;
    loan.id = o.loan_id;
    loan.borrower = venture;
    loan.principal = o.invested;
    loan.kind = ledger::LoanKind::AtRiskVenture;
    loan.variant = ledger::OriginationVariant::Deposit;
    loan.term_days = 365;
    l.originate_loan(loan);
    l.post({"", {}, {{venture + ":deposit", ledger::Side::Credit, o.invested},
                     {venture + ":equity", ledger::Side::Debit, o.invested},
                     {"suppliers:deposit", ledger::Side::Debit, o.invested},
                     {"suppliers:equity", ledger::Side::Credit, o.invested}},
            "Venture spending " + o.loan_id, ledger::MoneyEvent::Transfer});
    switch (o.resolution) {
      case Resolution::ConvertedAtBook:
        l.convert_to_equity(o.loan_id, o.invested);
        o.realized_equity_value = o.invested;
        break;
      case Resolution::Haircut:
        if (o.writedown.is_positive()) l.haircut(o.loan_id, o.writedown);
        if (l.loan(o.loan_id).open()) l.convert_to_equity(o.loan_id, o.invested - o.writedown);
        o.realized_equity_value = o.invested - o.writedown;
        break;
      case Resolution::FullLoss:
        l.haircut(o.loan_id, o.invested);
        o.writedown = o.invested;
        o.realized_equity_value = l.zero();
        break;
    }
    rep.writedowns += o.writedown;
    rep.outcomes.push_back(o);
  }
  rep.permanent_money_created = l.money_supply() - supply_before;
  rep.equity_booked = l.balance("bank:holdings");
  rep.reserves_after = l.balance("bank:reserves");
  rep.ledger = std::move(l);
  return rep;
}

}  // namespace circuitforge::policy
