#include <benchmark/benchmark.h>

#include <vector>

#include "lshmine/engine.hpp"
#include "lshmine/exact.hpp"
#include "lshmine/hamming_lsh.hpp"
#include "lshmine/minhash_lsh.hpp"
#include "lshmine/transform.hpp"

namespace {

using namespace lshmine;

const TransactionDatabase& sample_db() {
  static const auto db = generate_synthetic(2000, 40, 0.3, 11);
  return db;
}

std::vector<ItemsetRecord> singletons(const TransactionDatabase& db) {
  std::vector<ItemsetRecord> level;
  for (ItemId i = 0; i < db.item_count(); ++i) level.push_back(ItemsetRecord::singleton(db, i));
  return level;
}

void BM_Mine(benchmark::State& state) {
  MiningConfig c;
  c.variant = static_cast<Variant>(state.range(0));
  c.theta = 0.08;
  c.epsilon = 0.2;
  c.delta = 0.1;
  c.max_level = 3;
  std::uint64_t reads = 0;
  for (auto _ : state) {
    const auto report = lsh_apriori_mine(sample_db(), c);
    reads = 0;
    for (const auto& s : report.levels) reads += s.transactions_read;
    benchmark::DoNotOptimize(reads);
  }
  state.SetLabel(std::string(to_string(c.variant)));
  state.counters["transactions_read"] = static_cast<double>(reads);
}
BENCHMARK(BM_Mine)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_PadPreprocess(benchmark::State& state) {
  const auto level = singletons(sample_db());
  const auto ctx = make_level_context(level, sample_db().transaction_count(), 160);
  for (auto _ : state) {
    for (const auto& r : level) benchmark::DoNotOptimize(pad_preprocess(r.vector, ctx));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(level.size()));
}
BENCHMARK(BM_PadPreprocess);

void BM_HammingBuild(benchmark::State& state) {
  const auto level = singletons(sample_db());
  const auto ctx = make_level_context(level, sample_db().transaction_count(), 160);
  const auto params = hamming::derive_params(ctx, 0.2, 0.1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamming::Index::build(level, params, ctx, ++seed));
  }
  state.counters["tables"] = static_cast<double>(params.tables);
}
BENCHMARK(BM_HammingBuild)->Unit(benchmark::kMillisecond);

void BM_MinhashBuild(benchmark::State& state) {
  const auto level = singletons(sample_db());
  const auto ctx = make_level_context(level, sample_db().transaction_count(), 160);
  const auto params = minhash::derive_params(ctx, 0.2, 0.1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minhash::Sketch::build(level, params, ctx, ++seed));
  }
  state.counters["lambda"] = static_cast<double>(params.lambda);
}
BENCHMARK(BM_MinhashBuild)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
