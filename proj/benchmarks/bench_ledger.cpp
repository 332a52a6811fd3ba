#include <benchmark/benchmark.h>

#include "circuitforge/ledger/ledger.hpp"

using namespace circuitforge;
using namespace circuitforge::ledger;

static void BM_PostTransfer(benchmark::State& state) {
  Ledger l;
  l.add_party("a", Sector::Depositor);
  const Money m = l.money(125);
  const Transaction tx{"", {}, {{"a:coin", Side::Debit, m}, {"a:equity", Side::Credit, m}}, "t", MoneyEvent::Transfer};
  for (auto _ : state) benchmark::DoNotOptimize(l.post(tx));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PostTransfer);

static void BM_LoanLifecycle(benchmark::State& state) {
  for (auto _ : state) {
    Ledger l({}, CancellationPolicy::default_allocation());
    l.add_party("b", Sector::Borrower);
    l.add_party("gov_local", Sector::GovernmentLocal);
    l.add_party("gov_state", Sector::GovernmentState);
    l.add_party("gov_federal", Sector::GovernmentFederal);
    const Money savings = l.money(100'000'000);
    l.post({"", {}, {{"b:coin", Side::Debit, savings}, {"b:equity", Side::Credit, savings}}, "savings",
            MoneyEvent::Transfer});
    PaymentOptions coin;
    coin.medium = PaymentMedium::Coin;
    for (int i = 0; i < state.range(0); ++i) {
      Loan ln;
      ln.id = "L" + std::to_string(i);
      ln.borrower = "b";
      ln.principal = l.money(100000);
      ln.annual_rate = Decimal::parse("0.12");
      ln.variant = OriginationVariant::Deposit;
      l.originate_loan(ln);
      l.book_interest(ln.id, 30);
      l.pay_interest(ln.id, l.loan(ln.id).accrued, coin);
      l.pay_principal(ln.id, ln.principal);
    }
    benchmark::DoNotOptimize(l.money_supply());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoanLifecycle)->Arg(100)->Arg(1000);

static void BM_Replay(benchmark::State& state) {
  Ledger l;
  l.add_party("a", Sector::Depositor);
  const Money m = l.money(1);
  for (int i = 0; i < state.range(0); ++i)
    l.post({"", {}, {{"a:coin", Side::Debit, m}, {"a:equity", Side::Credit, m}}, "t", MoneyEvent::Transfer});
  for (auto _ : state) benchmark::DoNotOptimize(Ledger::replay(l));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Replay)->Arg(10000);

BENCHMARK_MAIN();
