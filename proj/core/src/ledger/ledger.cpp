#include "circuitforge/ledger/ledger.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "circuitforge/error.hpp"

namespace circuitforge::ledger {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const std::pair<E, std::string_view> (&table)[N], Errc err, std::string_view what) {
  for (const auto& [v, name] : table)
    if (name == s) return v;
  throw Error(err, "unknown " + std::string(what) + " '" + std::string(s) + "'");
}

template <typename E, std::size_t N>
std::string_view name_of(E v, const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto& [x, name] : table)
    if (x == v) return name;
  return "?";
}

constexpr std::pair<AccountKind, std::string_view> kKinds[] = {{AccountKind::Asset, "Asset"},
                                                               {AccountKind::Liability, "Liability"},
                                                               {AccountKind::Equity, "Equity"},
                                                               {AccountKind::Income, "Income"}};
constexpr std::pair<Sector, std::string_view> kSectors[] = {
    {Sector::Bank, "Bank"},
    {Sector::Borrower, "Borrower"},
    {Sector::Depositor, "Depositor"},
    {Sector::GovernmentLocal, "GovernmentLocal"},
    {Sector::GovernmentState, "GovernmentState"},
    {Sector::GovernmentFederal, "GovernmentFederal"},
    {Sector::ExternalWorld, "ExternalWorld"}};
constexpr std::pair<Side, std::string_view> kSides[] = {{Side::Debit, "Debit"}, {Side::Credit, "Credit"}};
constexpr std::pair<MoneyEvent, std::string_view> kEvents[] = {
    {MoneyEvent::Creation, "Creation"}, {MoneyEvent::Destruction, "Destruction"}, {MoneyEvent::Transfer, "Transfer"}};
constexpr std::pair<LoanKind, std::string_view> kLoanKinds[] = {
    {LoanKind::Commercial, "Commercial"}, {LoanKind::Consumer, "Consumer"}, {LoanKind::AtRiskVenture, "AtRiskVenture"}};
constexpr std::pair<BorrowerType, std::string_view> kBorrowerTypes[] = {
    {BorrowerType::EndBusinessBorrower, "EndBusinessBorrower"}, {BorrowerType::Intermediary, "Intermediary"}};
constexpr std::pair<OriginationVariant, std::string_view> kVariants[] = {{OriginationVariant::Notes, "notes"},
                                                                         {OriginationVariant::Deposit, "deposit"}};
constexpr std::pair<PaymentMedium, std::string_view> kMedia[] = {
    {PaymentMedium::Coin, "coin"}, {PaymentMedium::Paper, "paper"}, {PaymentMedium::Deposit, "deposit"}};
constexpr std::pair<Settlement, std::string_view> kSettlements[] = {{Settlement::Book, "book"},
                                                                    {Settlement::Hard, "hard"}};
constexpr std::pair<CancellationPolicy::Kind, std::string_view> kPolicies[] = {
    {CancellationPolicy::Kind::Cancel, "Cancel"},
    {CancellationPolicy::Kind::RetainToBank, "RetainToBank"},
    {CancellationPolicy::Kind::AllocateToGovernment, "AllocateToGovernment"},
    {CancellationPolicy::Kind::VentureRetain, "VentureRetain"}};

bool debit_positive(AccountKind k) { return k == AccountKind::Asset; }

}  // namespace

std::string_view to_string(AccountKind k) { return name_of(k, kKinds); }
std::string_view to_string(Sector s) { return name_of(s, kSectors); }
std::string_view to_string(Side s) { return name_of(s, kSides); }
std::string_view to_string(MoneyEvent e) { return name_of(e, kEvents); }
std::string_view to_string(LoanKind k) { return name_of(k, kLoanKinds); }
std::string_view to_string(BorrowerType b) { return name_of(b, kBorrowerTypes); }
std::string_view to_string(OriginationVariant v) { return name_of(v, kVariants); }
std::string_view to_string(PaymentMedium m) { return name_of(m, kMedia); }
std::string_view to_string(Settlement s) { return name_of(s, kSettlements); }
std::string_view to_string(CancellationPolicy::Kind k) { return name_of(k, kPolicies); }

AccountKind parse_account_kind(std::string_view s) { return parse_enum(s, kKinds, Errc::ParseError, "account kind"); }
Sector parse_sector(std::string_view s) { return parse_enum(s, kSectors, Errc::UnknownSector, "sector"); }
Side parse_side(std::string_view s) { return parse_enum(s, kSides, Errc::ParseError, "side"); }
MoneyEvent parse_money_event(std::string_view s) { return parse_enum(s, kEvents, Errc::ParseError, "money event"); }
LoanKind parse_loan_kind(std::string_view s) { return parse_enum(s, kLoanKinds, Errc::ParseError, "loan kind"); }
BorrowerType parse_borrower_type(std::string_view s) {
  return parse_enum(s, kBorrowerTypes, Errc::ParseError, "borrower type");
}
OriginationVariant parse_variant(std::string_view s) { return parse_enum(s, kVariants, Errc::ParseError, "variant"); }
PaymentMedium parse_medium(std::string_view s) { return parse_enum(s, kMedia, Errc::ParseError, "payment medium"); }
Settlement parse_settlement(std::string_view s) { return parse_enum(s, kSettlements, Errc::ParseError, "settlement"); }
CancellationPolicy::Kind parse_policy_kind(std::string_view s) {
  return parse_enum(s, kPolicies, Errc::InvalidPolicy, "policy");
}

std::string Account::owner() const {
  auto pos = id.find(':');
  return pos == std::string::npos ? id : id.substr(0, pos);
}

CancellationPolicy CancellationPolicy::allocate(Decimal local, Decimal state, Decimal federal, Decimal bank,
                                                bool include_consumer) {
  CancellationPolicy p{Kind::AllocateToGovernment, local, state, federal, bank, include_consumer};
  p.validate();
  return p;
}

CancellationPolicy CancellationPolicy::default_allocation() {
  return allocate(Decimal::parse("0.25"), Decimal::parse("0.25"), Decimal::parse("0.5"), Decimal{});
}

void CancellationPolicy::validate() const {
  if (kind != Kind::AllocateToGovernment) return;
  const Decimal one = Decimal::from_int(1);
  for (Decimal f : {local_frac, state_frac, federal_frac, bank_frac})
    if (f < Decimal{} || f > one) throw Error(Errc::InvalidPolicy, "allocation fraction outside [0,1]");
  if (local_frac + state_frac + federal_frac + bank_frac != one)
    throw Error(Errc::InvalidPolicy, "allocation fractions sum to " +
                                         (local_frac + state_frac + federal_frac + bank_frac).to_string() + ", not 1");
}

// Accumulates signed debit-positive amounts per account, then emits netted
// postings in first-touch order.
class PostingBuilder {
 public:
  explicit PostingBuilder(const Ledger& l) : ledger_(l) {}

  PostingBuilder& debit(const std::string& id, const Money& m) { return add(id, m.cents()); }
  PostingBuilder& credit(const std::string& id, const Money& m) { return add(id, -m.cents()); }

  Transaction build(std::string memo, MoneyEvent ev) const {
    Transaction tx;
    tx.memo = std::move(memo);
    tx.money_event = ev;
    tx.date = ledger_.today();
    for (const auto& id : order_) {
      const std::int64_t net = net_.at(id);
      if (net == 0) continue;
      tx.postings.push_back(
          {id, net > 0 ? Side::Debit : Side::Credit, Money(net > 0 ? net : -net, ledger_.config().currency)});
    }
    return tx;
  }

 private:
  PostingBuilder& add(const std::string& id, std::int64_t signed_cents) {
    if (!net_.count(id)) order_.push_back(id);
    net_[id] += signed_cents;
    return *this;
  }

  const Ledger& ledger_;
  std::vector<std::string> order_;
  std::map<std::string, std::int64_t> net_;
};

Ledger::Ledger(LedgerConfig config, CancellationPolicy policy) : config_(std::move(config)), policy_(policy) {
  policy_.validate();
  if (config_.day_basis != 360 && config_.day_basis != 365)
    throw Error(Errc::InvalidConfig, "day basis must be 360 or 365");
  add_party(config_.bank, Sector::Bank);
}

void Ledger::set_policy(const CancellationPolicy& p) {
  p.validate();
  policy_ = p;
}

void Ledger::open_account(const std::string& id, AccountKind kind, Sector sector, bool monetary) {
  if (id.empty()) throw Error(Errc::InvalidArgument, "empty account id");
  if (accounts_.count(id)) throw Error(Errc::DuplicateAccount, id);
  accounts_.emplace(id, Account{id, kind, sector, zero(), monetary});
  order_.push_back(id);
}

void Ledger::add_party(const std::string& name, Sector sector) {
  if (name.empty() || name.find(':') != std::string::npos)
    throw Error(Errc::InvalidArgument, "bad party name '" + name + "'");
  if (parties_.count(name)) throw Error(Errc::DuplicateAccount, "party " + name);
  struct Role {
    const char* suffix;
    AccountKind kind;
    bool monetary;
  };
  static const Role bank_roles[] = {{"reserves", AccountKind::Asset, true},
                                    {"suspense", AccountKind::Asset, false},
                                    {"holdings", AccountKind::Asset, false},
                                    {"deposits", AccountKind::Liability, false},
                                    {"capital", AccountKind::Equity, false},
                                    {"unrealized", AccountKind::Equity, false},
                                    {"income", AccountKind::Income, false}};
  static const Role party_roles[] = {{"coin", AccountKind::Asset, true},
                                     {"paper", AccountKind::Asset, true},
                                     {"deposit", AccountKind::Asset, true},
                                     {"loans", AccountKind::Liability, false},
                                     {"equity", AccountKind::Equity, false}};
  const bool is_bank = sector == Sector::Bank;
  for (const Role& r : is_bank ? std::vector<Role>(std::begin(bank_roles), std::end(bank_roles))
                               : std::vector<Role>(std::begin(party_roles), std::end(party_roles))) {
    if (accounts_.count(party_account(name, r.suffix))) throw Error(Errc::DuplicateAccount, party_account(name, r.suffix));
  }
  for (const Role& r : is_bank ? std::vector<Role>(std::begin(bank_roles), std::end(bank_roles))
                               : std::vector<Role>(std::begin(party_roles), std::end(party_roles)))
    open_account(party_account(name, r.suffix), r.kind, sector, r.monetary);
  parties_[name] = sector;
}

bool Ledger::has_party(const std::string& name) const { return parties_.count(name) != 0; }

const Account& Ledger::account(const std::string& id) const {
  auto it = accounts_.find(id);
  if (it == accounts_.end()) throw Error(Errc::UnknownAccount, id);
  return it->second;
}

std::string Ledger::next_id() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "T%04zu", log_.size() + 1);
  return buf;
}

void Ledger::validate(const Transaction& tx) const {
  if (tx.postings.size() < 2) throw Error(Errc::UnbalancedTransaction, "transaction needs at least two postings");
  std::int64_t debits = 0;
  std::int64_t credits = 0;
  std::map<std::string, std::int64_t> per_owner;
  for (const Posting& p : tx.postings) {
    if (p.amount.currency() != config_.currency)
      throw Error(Errc::CurrencyMismatch, "posting to " + p.account_id + " in '" + p.amount.currency() +
                                              "', ledger currency is '" + config_.currency + "'");
    if (!p.amount.is_positive())
      throw Error(Errc::InvalidAmount, "posting to " + p.account_id + " must be strictly positive");
    const Account& a = account(p.account_id);
    const std::int64_t c = p.amount.cents();
    (p.side == Side::Debit ? debits : credits) += c;
    per_owner[a.owner()] += p.side == Side::Debit ? c : -c;
  }
  if (debits != credits)
    throw Error(Errc::UnbalancedTransaction, "debits " + money(debits).to_string() + " != credits " +
                                                 money(credits).to_string());
  for (const auto& [owner, net] : per_owner)
    if (net != 0)
      throw Error(Errc::UnbalancedTransaction, "entity '" + owner + "' is out of balance by " + money(net).to_string());
}

const Transaction& Ledger::commit(Transaction tx) {
  validate(tx);
  if (tx.id.empty()) tx.id = next_id();
  if (tx.date == Date{}) tx.date = today_;
  for (const Posting& p : tx.postings) {
    Account& a = accounts_.at(p.account_id);
    const bool up = (p.side == Side::Debit) == debit_positive(a.kind);
    a.balance = Money(a.balance.cents() + (up ? p.amount.cents() : -p.amount.cents()), config_.currency);
  }
  log_.push_back(std::move(tx));
  return log_.back();
}

const Transaction& Ledger::post(Transaction tx) {
  if (tx.money_event != MoneyEvent::Transfer)
    throw Error(Errc::InvalidArgument, "only loan operations may create or destroy money");
  if (!tx.id.empty())
    for (const auto& t : log_)
      if (t.id == tx.id) throw Error(Errc::InvalidArgument, "duplicate transaction id " + tx.id);
  return commit(std::move(tx));
}

Ledger Ledger::replay(const Ledger& source) {
  Ledger out(source.config_, source.policy_);
  for (const auto& id : source.order_) {
    if (out.accounts_.count(id)) continue;
    const Account& a = source.accounts_.at(id);
    out.open_account(a.id, a.kind, a.sector, a.monetary);
  }
  out.parties_ = source.parties_;
  for (const Transaction& t : source.log_) out.commit(t);
  out.loans_ = source.loans_;
  out.today_ = source.today_;
  return out;
}

bool Ledger::replay_matches() const {
  const Ledger r = replay(*this);
  for (const auto& [id, a] : accounts_)
    if (r.accounts_.at(id).balance.cents() != a.balance.cents()) return false;
  return true;
}

Loan& Ledger::loan_mut(const std::string& id) {
  auto it = loans_.find(id);
  if (it == loans_.end()) throw Error(Errc::UnknownLoan, id);
  return it->second;
}

const Loan& Ledger::loan(const std::string& id) const {
  auto it = loans_.find(id);
  if (it == loans_.end()) throw Error(Errc::UnknownLoan, id);
  return it->second;
}

const Loan& Ledger::originate_loan(Loan loan) {
  if (loan.id.empty()) throw Error(Errc::InvalidArgument, "loan id is empty");
  if (loans_.count(loan.id)) throw Error(Errc::DuplicateLoan, loan.id);
  if (loan.principal.currency().empty()) loan.principal = Money(loan.principal.cents(), config_.currency);
  if (loan.principal.currency() != config_.currency) throw Error(Errc::CurrencyMismatch, "loan " + loan.id);
  if (!loan.principal.is_positive()) throw Error(Errc::NonPositivePrincipal, loan.id);
  if (loan.coin_fraction < Decimal{} || loan.coin_fraction > Decimal::from_int(1))
    throw Error(Errc::InvalidArgument, "coin fraction outside [0,1] for " + loan.id);
  if (loan.term_days <= 0) throw Error(Errc::InvalidArgument, "term must be positive for " + loan.id);
  if (!has_party(loan.borrower)) throw Error(Errc::UnknownAccount, "borrower " + loan.borrower);
  if (loan.chain_parent && !loans_.count(*loan.chain_parent)) throw Error(Errc::UnknownLoan, *loan.chain_parent);

  // coin_fraction·principal must land on a whole cent.
  const int128 coin_scaled = static_cast<int128>(loan.principal.cents()) * loan.coin_fraction.micros();
  if (coin_scaled % Decimal::kScale != 0)
    throw Error(Errc::InvalidArgument, "coin portion of " + loan.id + " is not a whole cent");
  const Money coin(static_cast<std::int64_t>(coin_scaled / Decimal::kScale), config_.currency);
  const Money rest = loan.principal - coin;

  if (loan.origination == Date{}) loan.origination = today_;
  loan.outstanding = loan.principal;
  loan.accrued = zero();

  PostingBuilder b(*this);
  b.debit(bank_account("suspense"), loan.principal);
  if (coin.is_positive()) {
    b.credit(bank_account("reserves"), coin);
    b.debit(party_account(loan.borrower, "coin"), coin);
  }
  if (rest.is_positive()) {
    if (loan.variant == OriginationVariant::Notes) {
      b.credit(bank_account("unrealized"), rest);
      b.debit(party_account(loan.borrower, "paper"), rest);
    } else {
      b.credit(bank_account("deposits"), rest);
      b.debit(party_account(loan.borrower, "deposit"), rest);
    }
  }
  b.credit(party_account(loan.borrower, "loans"), loan.principal);
  commit(b.build("Loan origination " + loan.id, MoneyEvent::Creation));
  return loans_.emplace(loan.id, std::move(loan)).first->second;
}

Money Ledger::accrue_interest(const std::string& loan_id, int period_days) const {
  const Loan& l = loan(loan_id);
  if (!l.open()) throw Error(Errc::LoanClosed, loan_id);
  if (period_days < 0) throw Error(Errc::InvalidArgument, "negative accrual period");
  const int128 num = static_cast<int128>(l.outstanding.cents()) * l.annual_rate.micros() * period_days;
  const int128 den = static_cast<int128>(Decimal::kScale) * config_.day_basis;
  return Money(div_round_half_up(num, den), config_.currency);
}

Money Ledger::book_interest(const std::string& loan_id, int period_days) {
  const Money i = accrue_interest(loan_id, period_days);
  if (i.is_zero()) return i;
  PostingBuilder b(*this);
  b.debit(bank_account("suspense"), i).credit(bank_account("unrealized"), i);
  commit(b.build("Interest " + loan_id, MoneyEvent::Transfer));
  loan_mut(loan_id).accrued += i;
  return i;
}

PaymentMedium Ledger::default_medium(const Loan& loan) const {
  return loan.variant == OriginationVariant::Deposit ? PaymentMedium::Deposit : PaymentMedium::Coin;
}

std::string Ledger::funds_account(const Loan& loan, PaymentMedium m) const {
  return party_account(loan.borrower, to_string(m));
}

std::string Ledger::receipt_account(PaymentMedium m) const {
  switch (m) {
    case PaymentMedium::Coin: return bank_account("reserves");
    case PaymentMedium::Paper: return bank_account("unrealized");
    case PaymentMedium::Deposit: return bank_account("deposits");
  }
  return bank_account("reserves");
}

void Ledger::check_funds(const Loan& loan, PaymentMedium m, const Money& amount) {
  const Money have = balance(funds_account(loan, m));
  if (have >= amount) return;
  const std::string msg = loan.borrower + " holds " + have.to_string() + " " + std::string(to_string(m)) +
                          ", needs " + amount.to_string();
  if (config_.funds_check == FundsCheck::Fail) throw Error(Errc::InsufficientBorrowerFunds, msg);
  warnings_.push_back(std::string(to_string(Errc::InsufficientBorrowerFunds)) + ": " + msg);
}

void Ledger::pay_interest(const std::string& loan_id, const Money& amount, const PaymentOptions& opt) {
  const Loan& l = loan(loan_id);
  if (!l.open()) throw Error(Errc::LoanClosed, loan_id);
  if (amount.currency() != config_.currency) throw Error(Errc::CurrencyMismatch, "interest on " + loan_id);
  if (!amount.is_positive()) throw Error(Errc::InvalidAmount, "interest payment must be positive");
  const PaymentMedium m = opt.medium.value_or(default_medium(l));
  const auto warn_mark = warnings_.size();
  check_funds(l, m, amount);

  const Money cleared = std::min(amount, l.accrued);
  PostingBuilder b(*this);
  b.credit(funds_account(l, m), amount).debit(party_account(l.borrower, "equity"), amount);
  b.debit(receipt_account(m), amount).credit(bank_account("income"), amount);
  if (cleared.is_positive()) b.credit(bank_account("suspense"), cleared).debit(bank_account("unrealized"), cleared);
  if (opt.settlement == Settlement::Hard && m != PaymentMedium::Coin)
    b.debit(bank_account("reserves"), amount).credit(bank_account("unrealized"), amount);
  try {
    commit(b.build("Interest payment " + loan_id, MoneyEvent::Transfer));
  } catch (...) {
    warnings_.resize(warn_mark);
    throw;
  }
  loan_mut(loan_id).accrued -= cleared;
}

bool Ledger::allocation_eligible(const Loan& l, bool include_consumer) const {
  if (l.kind == LoanKind::AtRiskVenture) return false;
  if (l.kind == LoanKind::Consumer && !include_consumer) return false;
  if (l.borrower_type == BorrowerType::Intermediary) return false;
  for (const auto& [id, other] : loans_)
    if (other.chain_parent && *other.chain_parent == l.id) return false;
  return true;
}

namespace {

// Splits `total` cents across weights (micro-units) by largest remainder.
std::vector<std::int64_t> largest_remainder(std::int64_t amount_cents, std::int64_t total,
                                            const std::vector<Decimal>& weights) {
  std::vector<std::int64_t> out(weights.size());
  std::vector<std::pair<int128, std::size_t>> rema;
  std::int64_t used = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const int128 exact = static_cast<int128>(amount_cents) * weights[i].micros();
    out[i] = static_cast<std::int64_t>(exact / Decimal::kScale);
    used += out[i];
    rema.push_back({exact % Decimal::kScale, i});
  }
  std::stable_sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < total && k < rema.size(); ++k, ++used) ++out[rema[k].second];
  return out;
}

}  // namespace

void Ledger::pay_principal(const std::string& loan_id, const Money& amount, const PaymentOptions& opt) {
  const Loan& l = loan(loan_id);
  const CancellationPolicy pol = opt.policy.value_or(policy_);
  pol.validate();
  if (!l.open()) throw Error(Errc::LoanClosed, loan_id);
  if (amount.currency() != config_.currency) throw Error(Errc::CurrencyMismatch, "principal on " + loan_id);
  if (!amount.is_positive()) throw Error(Errc::InvalidAmount, "principal payment must be positive");
  if (amount > l.outstanding)
    throw Error(Errc::Overpayment, loan_id + ": " + amount.to_string() + " > outstanding " + l.outstanding.to_string());
  if (pol.kind == CancellationPolicy::Kind::VentureRetain)
    throw Error(Errc::PolicyViolation, "venture retention goes through convert_to_equity, not pay_principal");
  if (pol.kind == CancellationPolicy::Kind::AllocateToGovernment && !allocation_eligible(l, pol.include_consumer))
    throw Error(Errc::PolicyViolation, loan_id + " is not eligible for government allocation");

  const PaymentMedium m = opt.medium.value_or(default_medium(l));
  const auto warn_mark = warnings_.size();
  check_funds(l, m, amount);

  PostingBuilder b(*this);
  b.credit(funds_account(l, m), amount).debit(party_account(l.borrower, "loans"), amount);
  b.credit(bank_account("suspense"), amount).debit(receipt_account(m), amount);
  if (opt.settlement == Settlement::Hard && m != PaymentMedium::Coin)
    b.debit(bank_account("reserves"), amount).credit(bank_account("unrealized"), amount);

  MoneyEvent ev = MoneyEvent::Transfer;
  std::string memo = "Payment of loan balance " + loan_id;
  switch (pol.kind) {
    case CancellationPolicy::Kind::Cancel:
      ev = MoneyEvent::Destruction;
      break;
    case CancellationPolicy::Kind::RetainToBank:
      b.debit(bank_account("unrealized"), amount).credit(bank_account("income"), amount);
      break;
    case CancellationPolicy::Kind::AllocateToGovernment: {
      const std::int64_t gov_total =
          div_round_half_up(static_cast<int128>(amount.cents()) * pol.government_frac().micros(), Decimal::kScale);
      const auto parts =
          largest_remainder(amount.cents(), gov_total, {pol.local_frac, pol.state_frac, pol.federal_frac});
      const std::string govs[] = {config_.gov_local, config_.gov_state, config_.gov_federal};
      for (int i = 0; i < 3; ++i) {
        if (parts[i] == 0) continue;
        const Money g = money(parts[i]);
        b.debit(party_account(govs[i], "deposit"), g).credit(party_account(govs[i], "equity"), g);
        b.credit(bank_account("deposits"), g).debit(bank_account("unrealized"), g);
      }
      const Money bank_share = amount - money(gov_total);
      if (bank_share.is_positive())
        b.debit(bank_account("unrealized"), bank_share).credit(bank_account("income"), bank_share);
      memo += " (allocated)";
      break;
    }
    case CancellationPolicy::Kind::VentureRetain:
      break;
  }
  try {
    commit(b.build(memo, ev));
  } catch (...) {
    warnings_.resize(warn_mark);
    throw;
  }
  loan_mut(loan_id).outstanding -= amount;
}

void Ledger::haircut_unchecked(Loan& l, const Money& w, const std::string& memo) {
  PostingBuilder b(*this);
  b.debit(bank_account("unrealized"), w).credit(bank_account("suspense"), w);
  b.debit(party_account(l.borrower, "loans"), w).credit(party_account(l.borrower, "equity"), w);
  commit(b.build(memo, MoneyEvent::Transfer));
  l.outstanding -= w;
}

void Ledger::haircut(const std::string& loan_id, const Money& writedown) {
  Loan& l = loan_mut(loan_id);
  if (l.kind != LoanKind::AtRiskVenture)
    throw Error(Errc::WrongLoanKind, loan_id + " is " + std::string(to_string(l.kind)) + "; use charge_off");
  if (!l.open()) throw Error(Errc::LoanClosed, loan_id);
  if (writedown.currency() != config_.currency) throw Error(Errc::CurrencyMismatch, "haircut on " + loan_id);
  if (!writedown.is_positive()) throw Error(Errc::InvalidAmount, "writedown must be positive");
  if (writedown > l.outstanding)
    throw Error(Errc::Overwrite, loan_id + ": writedown " + writedown.to_string() + " > outstanding " +
                                     l.outstanding.to_string());
  haircut_unchecked(l, writedown, "Haircut " + loan_id);
}

void Ledger::convert_to_equity(const std::string& loan_id, const Money& equity_value) {
  Loan& l = loan_mut(loan_id);
  if (l.kind != LoanKind::AtRiskVenture) throw Error(Errc::WrongLoanKind, loan_id);
  if (!l.open()) throw Error(Errc::LoanClosed, loan_id);
  if (equity_value.currency() != config_.currency) throw Error(Errc::CurrencyMismatch, "equity value " + loan_id);
  if (equity_value.is_negative()) throw Error(Errc::InvalidAmount, "equity value must not be negative");

  const Ledger backup = *this;
  try {
    Loan& ln = loan_mut(loan_id);
    if (equity_value < ln.outstanding) haircut_unchecked(ln, ln.outstanding - equity_value, "Haircut " + loan_id);
    if (ln.open()) {
      const Money out = ln.outstanding;
      PostingBuilder b(*this);
      b.debit(bank_account("holdings"), equity_value).credit(bank_account("suspense"), out);
      if (equity_value > out) b.credit(bank_account("income"), equity_value - out);
      b.debit(party_account(ln.borrower, "loans"), out).credit(party_account(ln.borrower, "equity"), out);
      commit(b.build("Conversion to equity " + loan_id, MoneyEvent::Transfer));
      ln.outstanding = zero();
    }
  } catch (...) {
    *this = backup;
    throw;
  }
}

void Ledger::charge_off(const std::string& loan_id) {
  Loan& l = loan_mut(loan_id);
  if (l.kind == LoanKind::AtRiskVenture) throw Error(Errc::WrongLoanKind, loan_id + " is a venture loan; use haircut");
  if (!l.open()) throw Error(Errc::LoanClosed, loan_id);
  const Money out = l.outstanding;
  PostingBuilder b(*this);
  b.debit(bank_account("capital"), out).credit(bank_account("suspense"), out);
  b.debit(party_account(l.borrower, "loans"), out).credit(party_account(l.borrower, "equity"), out);
  commit(b.build("Charge-off " + loan_id, MoneyEvent::Transfer));
  l.outstanding = zero();
}

void Ledger::close_period() {
  PostingBuilder b(*this);
  bool any = false;
  for (const auto& id : order_) {
    const Account& a = accounts_.at(id);
    if (a.kind != AccountKind::Income || a.balance.is_zero()) continue;
    const std::string owner = a.owner();
    const std::string target = owner == config_.bank ? bank_account("capital") : party_account(owner, "equity");
    account(target);
    if (a.balance.is_positive())
      b.debit(id, a.balance).credit(target, a.balance);
    else
      b.credit(id, -a.balance).debit(target, -a.balance);
    any = true;
  }
  if (any) commit(b.build("Period close", MoneyEvent::Transfer));
}

Money Ledger::money_supply() const {
  std::int64_t total = 0;
  for (const auto& [id, a] : accounts_)
    if (a.sector != Sector::Bank && a.monetary && a.kind == AccountKind::Asset) total += a.balance.cents();
  return money(total);
}

Money Ledger::sector_equity(Sector sector) const {
  std::int64_t total = 0;
  for (const auto& [id, a] : accounts_) {
    if (a.sector != sector) continue;
    if (a.kind == AccountKind::Asset) total += a.balance.cents();
    if (a.kind == AccountKind::Liability) total -= a.balance.cents();
  }
  return money(total);
}

Money Ledger::entity_imbalance(const std::string& owner) const {
  std::int64_t total = 0;
  for (const auto& [id, a] : accounts_) {
    if (a.owner() != owner) continue;
    total += a.kind == AccountKind::Asset ? a.balance.cents() : -a.balance.cents();
  }
  return money(total);
}

std::vector<std::string> Ledger::owners() const {
  std::set<std::string> s;
  for (const auto& [id, a] : accounts_) s.insert(a.owner());
  return {s.begin(), s.end()};
}

}  // namespace circuitforge::ledger
