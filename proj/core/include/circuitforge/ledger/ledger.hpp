#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circuitforge/date.hpp"
#include "circuitforge/decimal.hpp"
#include "circuitforge/money.hpp"

namespace circuitforge::ledger {

enum class AccountKind { Asset, Liability, Equity, Income };
enum class Sector { Bank, Borrower, Depositor, GovernmentLocal, GovernmentState, GovernmentFederal, ExternalWorld };
enum class Side { Debit, Credit };
enum class MoneyEvent { Creation, Destruction, Transfer };
enum class LoanKind { Commercial, Consumer, AtRiskVenture };
enum class BorrowerType { EndBusinessBorrower, Intermediary };

/// Notes: coin from reserves plus bank-issued paper, no borrower deposits.
/// Deposit: the non-coin part is credited to a deposit account at the bank.
enum class OriginationVariant { Notes, Deposit };
enum class PaymentMedium { Coin, Paper, Deposit };
/// Hard settlement means the bank ends up holding coin for the amount even
/// when the borrower pays with paper or a deposit.
enum class Settlement { Book, Hard };
enum class FundsCheck { Fail, Warn };

std::string_view to_string(AccountKind k);
std::string_view to_string(Sector s);
std::string_view to_string(Side s);
std::string_view to_string(MoneyEvent e);
std::string_view to_string(LoanKind k);
std::string_view to_string(BorrowerType b);
std::string_view to_string(OriginationVariant v);
std::string_view to_string(PaymentMedium m);
std::string_view to_string(Settlement s);

AccountKind parse_account_kind(std::string_view s);
/// Throws UnknownSector.
Sector parse_sector(std::string_view s);
Side parse_side(std::string_view s);
MoneyEvent parse_money_event(std::string_view s);
LoanKind parse_loan_kind(std::string_view s);
BorrowerType parse_borrower_type(std::string_view s);
OriginationVariant parse_variant(std::string_view s);
PaymentMedium parse_medium(std::string_view s);
Settlement parse_settlement(std::string_view s);

inline constexpr Sector kAllSectors[] = {Sector::Bank,           Sector::Borrower,        Sector::Depositor,
                                         Sector::GovernmentLocal, Sector::GovernmentState, Sector::GovernmentFederal,
                                         Sector::ExternalWorld};

struct Account {
  std::string id;
  AccountKind kind = AccountKind::Asset;
  Sector sector = Sector::Bank;
  Money balance;
  /// Counts toward the money supply when held outside the bank sector.
  bool monetary = false;

  /// Accounts are grouped into entities by the id prefix before ':'.
  std::string owner() const;
};

struct Posting {
  std::string account_id;
  Side side = Side::Debit;
  Money amount;
};

struct Transaction {
  std::string id;
  Date date;
  std::vector<Posting> postings;
  std::string memo;
  MoneyEvent money_event = MoneyEvent::Transfer;
};

struct CancellationPolicy {
  enum class Kind { Cancel, RetainToBank, AllocateToGovernment, VentureRetain };

  Kind kind = Kind::Cancel;
  Decimal local_frac;
  Decimal state_frac;
  Decimal federal_frac;
  Decimal bank_frac;
  /// Consumer loans are left out of government allocation unless set.
  bool include_consumer = false;

  static CancellationPolicy cancel() { return {}; }
  static CancellationPolicy retain_to_bank() { return {Kind::RetainToBank, {}, {}, {}, {}, false}; }
  static CancellationPolicy venture_retain() { return {Kind::VentureRetain, {}, {}, {}, {}, false}; }
  static CancellationPolicy allocate(Decimal local, Decimal state, Decimal federal, Decimal bank,
                                     bool include_consumer = false);
  /// local 0.25, state 0.25, federal 0.50, bank 0.
  static CancellationPolicy default_allocation();

  /// Throws InvalidPolicy when allocation fractions are outside [0,1] or do not sum to 1.
  void validate() const;
  Decimal government_frac() const { return local_frac + state_frac + federal_frac; }
};

std::string_view to_string(CancellationPolicy::Kind k);
CancellationPolicy::Kind parse_policy_kind(std::string_view s);

struct Loan {
  std::string id;
  /// Party name; the borrower's accounts are `<borrower>:coin`, `:paper`, `:deposit`, `:loans`, `:equity`.
  std::string borrower;
  Money principal;
  Decimal coin_fraction;
  Decimal annual_rate;
  Date origination;
  int term_days = 30;
  LoanKind kind = LoanKind::Commercial;
  std::optional<std::string> chain_parent;
  BorrowerType borrower_type = BorrowerType::EndBusinessBorrower;
  OriginationVariant variant = OriginationVariant::Notes;
  Money outstanding;
  /// Interest booked to suspense and not yet paid.
  Money accrued;

  bool open() const { return outstanding.is_positive(); }
};

struct PaymentOptions {
  std::optional<PaymentMedium> medium;  // defaults from the loan variant
  Settlement settlement = Settlement::Book;
  std::optional<CancellationPolicy> policy;  // overrides the ledger policy for this payment
};

struct LedgerConfig {
  std::string currency = "F";
  std::string bank = "bank";
  std::string gov_local = "gov_local";
  std::string gov_state = "gov_state";
  std::string gov_federal = "gov_federal";
  int day_basis = 360;
  FundsCheck funds_check = FundsCheck::Fail;
};

/// Single-writer double-entry book. Every operation either commits fully or
/// leaves the ledger untouched and throws circuitforge::Error.
class Ledger {
 public:
  explicit Ledger(LedgerConfig config = {}, CancellationPolicy policy = {});

  const LedgerConfig& config() const { return config_; }
  const CancellationPolicy& policy() const { return policy_; }
  void set_policy(const CancellationPolicy& p);

  // --- accounts and parties

  /// Opens an account with a zero balance. Throws DuplicateAccount.
  void open_account(const std::string& id, AccountKind kind, Sector sector, bool monetary = false);
  /// Opens the standard role accounts for a party (bank roles when sector is Bank).
  void add_party(const std::string& name, Sector sector);
  bool has_account(const std::string& id) const { return accounts_.count(id) != 0; }
  bool has_party(const std::string& name) const;
  const Account& account(const std::string& id) const;
  Money balance(const std::string& id) const { return account(id).balance; }
  const std::map<std::string, Account>& accounts() const { return accounts_; }
  /// Account ids in the order they were opened.
  const std::vector<std::string>& account_order() const { return order_; }

  std::string bank_account(std::string_view role) const { return config_.bank + ":" + std::string(role); }
  static std::string party_account(std::string_view party, std::string_view role) {
    return std::string(party) + ":" + std::string(role);
  }

  Money zero() const { return Money(0, config_.currency); }
  Money money(std::int64_t cents) const { return Money(cents, config_.currency); }

  // --- clock

  void set_date(Date d) { today_ = d; }
  Date today() const { return today_; }

  // --- journal

  /// Commits a Transfer transaction after checking balance per entity.
  /// Creation and Destruction are reserved for loan operations.
  const Transaction& post(Transaction tx);
  const std::vector<Transaction>& transactions() const { return log_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Rebuilds balances from the account definitions and the log.
  static Ledger replay(const Ledger& source);
  /// True when replay reproduces every balance exactly.
  bool replay_matches() const;

  // --- loans

  const Loan& originate_loan(Loan loan);
  const Loan& loan(const std::string& id) const;
  const std::map<std::string, Loan>& loans() const { return loans_; }

  /// Simple interest on the outstanding balance; no mutation.
  Money accrue_interest(const std::string& loan_id, int period_days) const;
  /// Books accrued interest into suspense against unrealized bank equity.
  Money book_interest(const std::string& loan_id, int period_days);
  void pay_interest(const std::string& loan_id, const Money& amount, const PaymentOptions& opt = {});
  void pay_principal(const std::string& loan_id, const Money& amount, const PaymentOptions& opt = {});
  void convert_to_equity(const std::string& loan_id, const Money& equity_value);
  void haircut(const std::string& loan_id, const Money& writedown);
  /// Writes a non-venture loan off against bank capital.
  void charge_off(const std::string& loan_id);
  /// Whether principal from this loan may go to government under allocation.
  bool allocation_eligible(const Loan& loan, bool include_consumer) const;

  /// Moves each Income balance into its owner's equity account.
  void close_period();

  // --- queries

  Money money_supply() const;
  Money sector_equity(Sector sector) const;
  /// Σ Assets − Σ Liabilities − Σ Equity − Σ Income for one owner; zero after every commit.
  Money entity_imbalance(const std::string& owner) const;
  std::vector<std::string> owners() const;

 private:
  friend class PostingBuilder;

  const Transaction& commit(Transaction tx);
  void validate(const Transaction& tx) const;
  Loan& loan_mut(const std::string& id);
  std::string next_id() const;
  std::string funds_account(const Loan& loan, PaymentMedium m) const;
  std::string receipt_account(PaymentMedium m) const;
  PaymentMedium default_medium(const Loan& loan) const;
  void check_funds(const Loan& loan, PaymentMedium m, const Money& amount);
  void haircut_unchecked(Loan& loan, const Money& writedown, const std::string& memo);

  LedgerConfig config_;
  CancellationPolicy policy_;
  std::map<std::string, Account> accounts_;
  std::vector<std::string> order_;
  std::map<std::string, Sector> parties_;
  std::vector<Transaction> log_;
  std::map<std::string, Loan> loans_;
  std::vector<std::string> warnings_;
  Date today_{};
};

}  // namespace circuitforge::ledger
