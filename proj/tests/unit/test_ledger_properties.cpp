// Randomized checks of the accounting identity, replay and money conservation.

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "circuitforge/error.hpp"
#include "circuitforge/ledger/ledger.hpp"
#include "oracles.hpp"

using namespace circuitforge;
using namespace circuitforge::ledger;

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Everything observable about a ledger, as text, so replays compare byte for byte.
std::string dump(const Ledger& l) {
  std::ostringstream os;
  for (const auto& id : l.account_order()) os << id << '=' << l.balance(id).to_string() << '\n';
  for (const auto& t : l.transactions()) {
    os << t.id << ' ' << t.date.to_string() << ' ' << to_string(t.money_event) << ' ' << t.memo << '\n';
    for (const auto& p : t.postings) os << "  " << p.account_id << ' ' << to_string(p.side) << ' ' << p.amount.to_string() << '\n';
  }
  return os.str();
}

void add_governments(Ledger& l) {
  l.add_party("gov_local", Sector::GovernmentLocal);
  l.add_party("gov_state", Sector::GovernmentState);
  l.add_party("gov_federal", Sector::GovernmentFederal);
}

Money sum_sector_equity(const Ledger& l) {
  Money s = l.zero();
  for (auto sec : kAllSectors) s += l.sector_equity(sec);
  return s;
}

}  // namespace

TEST(LedgerProperty, TenThousandRandomTransactionsKeepEveryEntityBalanced) {
  Rng rng(20240601);
  Ledger l;
  const std::vector<std::pair<std::string, Sector>> parties = {
      {"alice", Sector::Depositor},        {"bob", Sector::Depositor},       {"firm", Sector::Borrower},
      {"city", Sector::GovernmentLocal},   {"state", Sector::GovernmentState}, {"nation", Sector::GovernmentFederal},
      {"abroad", Sector::ExternalWorld}};
  for (const auto& [name, sec] : parties) l.add_party(name, sec);
  const std::vector<std::string> owners = [&] {
    std::vector<std::string> o{"bank"};
    for (const auto& p : parties) o.push_back(p.first);
    return o;
  }();
  std::map<std::string, std::vector<std::string>> accounts_of;
  for (const auto& [id, a] : l.accounts()) accounts_of[a.owner()].push_back(id);

  int committed = 0, rejected = 0;
  for (int i = 0; i < 12000; ++i) {
    Transaction tx;
    tx.memo = "random " + std::to_string(i);
    const int legs = static_cast<int>(uniform(rng, 1, 3));
    for (int k = 0; k < legs; ++k) {
      const auto& acc = accounts_of[owners[static_cast<std::size_t>(uniform(rng, 0, owners.size() - 1))]];
      const auto& a = acc[static_cast<std::size_t>(uniform(rng, 0, acc.size() - 1))];
      const auto& b = acc[static_cast<std::size_t>(uniform(rng, 0, acc.size() - 1))];
      const Money amt = l.money(uniform(rng, 1, 1'000'000));
      tx.postings.push_back({a, Side::Debit, amt});
      tx.postings.push_back({b, Side::Credit, amt});
    }
    const bool corrupt = uniform(rng, 0, 9) == 0;
    if (corrupt) tx.postings.back().amount += l.money(uniform(rng, 1, 99));
    const std::size_t log_before = l.transactions().size();
    const Money probe = l.balance(tx.postings.back().account_id);
    try {
      l.post(tx);
      ++committed;
      ASSERT_FALSE(corrupt) << "unbalanced transaction accepted";
    } catch (const Error& e) {
      ASSERT_TRUE(corrupt) << e.what();
      ASSERT_EQ(e.code(), Errc::UnbalancedTransaction);
      ASSERT_EQ(l.transactions().size(), log_before);
      ASSERT_EQ(l.balance(tx.postings.back().account_id), probe);
      ++rejected;
    }
    for (const auto& o : owners) ASSERT_TRUE(l.entity_imbalance(o).is_zero()) << o << " after " << i;
  }
  EXPECT_GE(committed, 10000);
  EXPECT_GT(rejected, 0);

  // Replay is byte-exact and agrees with an independent fold over the log.
  const Ledger r1 = Ledger::replay(l);
  const Ledger r2 = Ledger::replay(r1);
  EXPECT_EQ(dump(r1), dump(l));
  EXPECT_EQ(dump(r2), dump(l));
  const auto folded = oracle::balances_from_log(l);
  for (const auto& [id, a] : l.accounts()) ASSERT_EQ(folded.at(id), a.balance.cents()) << id;
}

TEST(LedgerProperty, SectorEquitiesSumToZeroWithExternalMirror) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    Ledger l({}, CancellationPolicy::default_allocation());
    l.add_party("world", Sector::ExternalWorld);
    add_governments(l);
    const std::vector<std::string> people = {"p1", "p2", "p3", "p4"};
    for (const auto& p : people) l.add_party(p, Sector::Borrower);

    // Outside money enters only against a liability of the external world.
    auto inject = [&](const std::string& acct, const std::string& offset, std::int64_t cents) {
      const Money m = l.money(cents);
      l.post({"", {}, {{acct, Side::Debit, m}, {offset, Side::Credit, m}, {"world:equity", Side::Debit, m},
                       {"world:loans", Side::Credit, m}}, "inject", MoneyEvent::Transfer});
    };
    inject("bank:reserves", "bank:capital", 50'000'000);
    ASSERT_TRUE(sum_sector_equity(l).is_zero());

    int serial = 0;
    for (int step = 0; step < 400; ++step) {
      const auto& who = people[static_cast<std::size_t>(uniform(rng, 0, 3))];
      try {
        switch (uniform(rng, 0, 5)) {
          case 0:
            inject(who + ":coin", who + ":equity", uniform(rng, 1, 5000));
            break;
          case 1: {
            Loan ln;
            ln.id = "L" + std::to_string(++serial);
            ln.borrower = who;
            ln.principal = l.money(uniform(rng, 100, 100000));
            ln.coin_fraction = Decimal::from_micros(uniform(rng, 0, 1) * 100000);
            if (ln.principal.cents() % 10 != 0) ln.coin_fraction = Decimal{};
            ln.annual_rate = Decimal::parse("0.12");
            ln.variant = OriginationVariant::Deposit;
            l.originate_loan(ln);
            break;
          }
          case 2:
          case 3: {
            if (serial == 0) break;
            const auto id = "L" + std::to_string(uniform(rng, 1, serial));
            const Loan& ln = l.loan(id);
            if (!ln.open()) break;
            PaymentOptions opt;
            opt.policy = uniform(rng, 0, 1) ? CancellationPolicy::cancel() : CancellationPolicy::default_allocation();
            const Money pay = l.money(uniform(rng, 1, ln.outstanding.cents()));
            if (l.balance(ln.borrower + ":deposit") < pay) break;
            l.pay_principal(id, pay, opt);
            break;
          }
          case 4: {
            if (serial == 0) break;
            const auto id = "L" + std::to_string(uniform(rng, 1, serial));
            const Loan& ln = l.loan(id);
            if (!ln.open()) break;
            // Booked interest is a one-sided receivable until paid, so book and pay together.
            const int days = static_cast<int>(uniform(rng, 1, 90));
            const Money i = l.accrue_interest(id, days);
            if (!i.is_positive() || l.balance(ln.borrower + ":coin") < i) break;
            l.book_interest(id, days);
            PaymentOptions opt;
            opt.medium = PaymentMedium::Coin;
            l.pay_interest(id, i, opt);
            break;
          }
          case 5: {
            const auto& to = people[static_cast<std::size_t>(uniform(rng, 0, 3))];
            const Money m = l.money(uniform(rng, 1, 2000));
            if (to == who || l.balance(who + ":deposit") < m) break;
            l.post({"", {}, {{who + ":deposit", Side::Credit, m}, {who + ":equity", Side::Debit, m},
                             {to + ":deposit", Side::Debit, m}, {to + ":equity", Side::Credit, m}},
                    "pay", MoneyEvent::Transfer});
            break;
          }
        }
      } catch (const Error& e) {
        FAIL() << "seed " << seed << " step " << step << ": " << e.what();
      }
      ASSERT_TRUE(sum_sector_equity(l).is_zero()) << "seed " << seed << " step " << step;
    }
    EXPECT_TRUE(l.replay_matches());
  }
}

namespace {

struct Lifecycle {
  Money principal;
  std::vector<Money> installments;
  std::vector<Money> interest;
  OriginationVariant variant = OriginationVariant::Deposit;
  Decimal coin_fraction;
};

Lifecycle random_lifecycle(Rng& rng, bool with_interest) {
  Lifecycle lc;
  const std::int64_t p = uniform(rng, 100, 500000);
  lc.principal = Money(p, "F");
  lc.variant = uniform(rng, 0, 1) ? OriginationVariant::Deposit : OriginationVariant::Notes;
  lc.coin_fraction = p % 10 == 0 ? Decimal::from_micros(uniform(rng, 0, 10) * 100000) : Decimal{};
  std::int64_t left = p;
  while (left > 0) {
    const std::int64_t k = std::min(left, uniform(rng, 1, p));
    lc.installments.push_back(Money(k, "F"));
    left -= k;
    if (with_interest) lc.interest.push_back(Money(uniform(rng, 1, 500), "F"));
  }
  return lc;
}

// Runs one lifecycle and returns money supply before origination and after the last payment.
std::pair<Money, Money> run_lifecycle(const Lifecycle& lc, const CancellationPolicy& pol, Ledger* out = nullptr) {
  Ledger l({}, pol);
  l.add_party("b", Sector::Borrower);
  add_governments(l);
  const Money vault = Money(10'000'000, "F");
  l.post({"", {}, {{"bank:reserves", Side::Debit, vault}, {"bank:capital", Side::Credit, vault}}, "vault",
          MoneyEvent::Transfer});
  // The borrower holds some money of its own to pay interest from.
  const Money own = Money(1'000'000, "F");
  l.post({"", {}, {{"b:coin", Side::Debit, own}, {"b:equity", Side::Credit, own}}, "savings", MoneyEvent::Transfer});
  const Money before = l.money_supply();
  Loan ln;
  ln.id = "L";
  ln.borrower = "b";
  ln.principal = lc.principal;
  ln.coin_fraction = lc.coin_fraction;
  ln.variant = lc.variant;
  l.originate_loan(ln);
  for (std::size_t i = 0; i < lc.installments.size(); ++i) {
    PaymentOptions coin;
    coin.medium = PaymentMedium::Coin;
    if (i < lc.interest.size()) l.pay_interest("L", lc.interest[i], coin);
    // Pay principal from whatever the loan put in the borrower's hands; top up with coin.
    const std::string medium_acct = lc.variant == OriginationVariant::Deposit ? "b:deposit" : "b:paper";
    PaymentOptions opt;
    opt.medium = l.balance(medium_acct) >= lc.installments[i]
                     ? (lc.variant == OriginationVariant::Deposit ? PaymentMedium::Deposit : PaymentMedium::Paper)
                     : PaymentMedium::Coin;
    l.pay_principal("L", lc.installments[i], opt);
  }
  EXPECT_FALSE(l.loan("L").open());
  const Money after = l.money_supply();
  if (out) *out = std::move(l);
  return {before, after};
}

Money sum(const std::vector<Money>& v) {
  Money s(0, "F");
  for (const auto& m : v) s += m;
  return s;
}

}  // namespace

TEST(Conservation, CancelRestoresPreLoanSupply) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto lc = random_lifecycle(rng, false);
    const auto [before, after] = run_lifecycle(lc, CancellationPolicy::cancel());
    ASSERT_EQ(after, before) << "case " << i;
  }
}

TEST(Conservation, CancelWithInterestLosesExactlyTheInterest) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto lc = random_lifecycle(rng, true);
    const auto [before, after] = run_lifecycle(lc, CancellationPolicy::cancel());
    ASSERT_EQ(before - after, sum(lc.interest)) << "case " << i;
  }
}

TEST(Conservation, AllocateAddsExactlyThePrincipalRepaid) {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto lc = random_lifecycle(rng, false);
    Ledger l;
    const auto [before, after] = run_lifecycle(lc, CancellationPolicy::default_allocation(), &l);
    ASSERT_EQ(after - before, lc.principal) << "case " << i;
    const Money gov = l.balance("gov_local:deposit") + l.balance("gov_state:deposit") +
                      l.balance("gov_federal:deposit");
    ASSERT_EQ(gov, lc.principal);
  }
}

TEST(Conservation, GovernmentReceiptsFollowTheFractionsPerPayment) {
  Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    // Random fractions on a 0.01 grid that sum to one.
    std::int64_t a = uniform(rng, 0, 100), b = uniform(rng, 0, 100 - a), c = uniform(rng, 0, 100 - a - b);
    const std::int64_t d = 100 - a - b - c;
    auto frac = [](std::int64_t pct) { return Decimal::from_micros(pct * 10000); };
    const auto pol = CancellationPolicy::allocate(frac(a), frac(b), frac(c), frac(d));
    const auto lc = random_lifecycle(rng, false);
    Ledger l;
    const auto [before, after] = run_lifecycle(lc, pol, &l);
    std::int64_t expected = 0;
    for (const auto& m : lc.installments) {
      // Half-up rounding of each payment's government share, computed in integers.
      const std::int64_t num = m.cents() * (a + b + c);
      expected += (num + 50) / 100;
    }
    const Money gov = l.balance("gov_local:deposit") + l.balance("gov_state:deposit") +
                      l.balance("gov_federal:deposit");
    ASSERT_EQ(gov.cents(), expected) << "case " << i;
    ASSERT_EQ((after - before).cents(), expected);
    ASSERT_EQ(l.balance("bank:income").cents(), lc.principal.cents() - expected);
  }
}

TEST(Conservation, RetainToBankSendsRepaymentsIntoTheHoard) {
  // Repaid money leaves circulation for the bank's own books, as income.
  Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    const auto lc = random_lifecycle(rng, false);
    Ledger l;
    const auto [before, after] = run_lifecycle(lc, CancellationPolicy::retain_to_bank(), &l);
    ASSERT_EQ(after, before);
    ASSERT_EQ(l.balance("bank:income"), lc.principal);
  }
}

TEST(Conservation, DifferentialCancelVersusAllocate) {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const auto lc = random_lifecycle(rng, true);
    const auto cancel = run_lifecycle(lc, CancellationPolicy::cancel());
    const auto alloc = run_lifecycle(lc, CancellationPolicy::default_allocation());
    ASSERT_EQ(cancel.first, alloc.first);
    ASSERT_EQ(alloc.second - cancel.second, lc.principal) << "case " << i;
  }
}

TEST(Conservation, VentureFullLossLeavesInvestedInCirculation) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    Ledger l({}, CancellationPolicy::venture_retain());
    l.add_party("v", Sector::Borrower);
    const Money vault(100000, "F");
    l.post({"", {}, {{"bank:reserves", Side::Debit, vault}, {"bank:capital", Side::Credit, vault}}, "vault",
            MoneyEvent::Transfer});
    const Money before = l.money_supply();
    Loan ln;
    ln.id = "V";
    ln.borrower = "v";
    ln.principal = Money(uniform(rng, 1, 1'000'000), "F");
    ln.kind = LoanKind::AtRiskVenture;
    ln.variant = OriginationVariant::Deposit;
    l.originate_loan(ln);
    Money left = ln.principal;
    while (left.is_positive()) {
      const Money w(uniform(rng, 1, left.cents()), "F");
      l.haircut("V", w);
      left -= w;
      ASSERT_EQ(l.balance("bank:reserves"), vault);
      ASSERT_EQ(l.balance("bank:capital"), vault);
    }
    ASSERT_EQ(l.money_supply() - before, ln.principal);
  }
}
