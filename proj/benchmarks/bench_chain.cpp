#include <benchmark/benchmark.h>

#include "circuitforge/policy/chain.hpp"

using namespace circuitforge;
using namespace circuitforge::policy;

// Many independent funding chains of the given depth.
static LoanGraph forest(int chains, int depth) {
  LoanGraph g;
  for (int c = 0; c < chains; ++c)
    for (int d = 0; d < depth; ++d) {
      const std::string id = "c" + std::to_string(c) + "_" + std::to_string(d);
      g.nodes.push_back({id, ledger::LoanKind::Commercial,
                         d + 1 == depth ? ledger::BorrowerType::EndBusinessBorrower : ledger::BorrowerType::Intermediary});
      if (d > 0) g.edges.push_back({"c" + std::to_string(c) + "_" + std::to_string(d - 1), id});
    }
  return g;
}

static void BM_ClassifyChain(benchmark::State& state) {
  const auto g = forest(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(classify_chain(g));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes.size()));
}
BENCHMARK(BM_ClassifyChain)->Arg(100)->Arg(2500);
