#include "lshmine/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "lshmine/error.hpp"
#include "lshmine/hamming_lsh.hpp"
#include "lshmine/minhash_lsh.hpp"
#include "lshmine/parallel.hpp"
#include "lshmine/random.hpp"
#include "lshmine/transform.hpp"

namespace lshmine {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::exact:
      return "exact";
    case Variant::hamming:
      return "hamming";
    case Variant::minhash:
      return "minhash";
    case Variant::covering:
      return "covering";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::exact, Variant::hamming, Variant::minhash, Variant::covering}) {
    if (name == to_string(v)) return v;
  }
  throw Error("unknown variant '" + std::string(name) + "'");
}

void MiningConfig::validate() const {
  auto fraction = [](double x) { return x > 0.0 && x < 1.0; };
  if (!fraction(theta)) throw Error("theta must be in (0,1)");
  if (!fraction(epsilon)) throw Error("epsilon must be in (0,1)");
  if (!fraction(delta)) throw Error("delta must be in (0,1)");
  if (mask_dim_cap < 1 || mask_dim_cap > covering::kMaxMaskDim) {
    throw Error("mask_dim_cap must be in [1," + std::to_string(covering::kMaxMaskDim) + "]");
  }
  if (max_level && *max_level < 1) throw Error("max_level must be at least 1");
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// The exact join of one level plus the true support of every candidate.
/// Instrumentation only: these scans are not charged to any variant.
struct JoinTruth {
  std::vector<JoinCandidate> candidates;
  std::vector<std::size_t> supports;
  std::size_t frequent = 0;
};

JoinTruth exact_join(std::span<const ItemsetRecord> level, std::size_t theta_count) {
  JoinTruth truth;
  truth.candidates = join_with_sources(level);
  truth.supports.reserve(truth.candidates.size());
  for (const auto& c : truth.candidates) {
    const std::size_t s = co_support(level[c.first].vector, level[c.second].vector);
    truth.supports.push_back(s);
    if (s >= theta_count) ++truth.frequent;
  }
  return truth;
}

struct LevelOutcome {
  std::vector<ItemsetRecord> frequent;
  LevelStats stats;
};

LevelOutcome run_exact_level(std::span<const ItemsetRecord> level, const JoinTruth& truth,
                             std::size_t n, std::size_t theta_count) {
  LevelOutcome out;
  auto start = Clock::now();
  for (std::size_t i = 0; i < truth.candidates.size(); ++i) {
    const auto& c = truth.candidates[i];
    out.stats.verification_reads += n;
    if (truth.supports[i] >= theta_count) {
      out.frequent.push_back(
          {c.items, level[c.first].vector & level[c.second].vector, truth.supports[i]});
    }
  }
  out.stats.method = "exact";
  out.stats.candidates = truth.candidates.size();
  out.stats.verify_ms = ms_since(start);
  return out;
}

/// Classifies the two ordered slots of every negative candidate's canonical
/// pair: FP when the partner reached verification in that query.
void count_slots(LevelStats& stats, const JoinTruth& truth, std::size_t theta_count,
                 const std::vector<std::vector<std::size_t>>& reached) {
  auto has = [&](std::size_t q, std::size_t a) {
    return std::binary_search(reached[q].begin(), reached[q].end(), a);
  };
  for (std::size_t i = 0; i < truth.candidates.size(); ++i) {
    if (truth.supports[i] >= theta_count) continue;
    const auto& c = truth.candidates[i];
    for (auto [q, a] : {std::pair{c.first, c.second}, std::pair{c.second, c.first}}) {
      if (has(q, a)) {
        ++stats.false_positives;
      } else {
        ++stats.true_negatives;
      }
    }
  }
}

/// Hamming and covering verify partners during the query; the candidates are
/// the distinct unions that reached verification.
LevelOutcome collect_verified(std::span<const ItemsetRecord> level,
                              std::vector<QueryResult>& results) {
  LevelOutcome out;
  std::set<Itemset> inspected;
  std::map<Itemset, ItemsetRecord> found;
  for (std::size_t q = 0; q < results.size(); ++q) {
    out.stats.verification_reads += results[q].verification_reads;
    for (std::size_t a : results[q].inspected) {
      inspected.insert(itemset_union(level[q].items, level[a].items));
    }
    for (std::size_t a : results[q].partners) {
      auto items = itemset_union(level[q].items, level[a].items);
      if (found.contains(items)) continue;
      BitVector v = level[q].vector & level[a].vector;
      const std::size_t support = v.count();
      found.emplace(items, ItemsetRecord{items, std::move(v), support});
    }
  }
  out.stats.candidates = inspected.size();
  for (auto& [items, rec] : found) out.frequent.push_back(std::move(rec));
  return out;
}

std::vector<std::vector<std::size_t>> sorted_inspections(const std::vector<QueryResult>& results) {
  std::vector<std::vector<std::size_t>> reached(results.size());
  for (std::size_t q = 0; q < results.size(); ++q) {
    reached[q] = results[q].inspected;
    std::sort(reached[q].begin(), reached[q].end());
  }
  return reached;
}

LevelOutcome run_hamming_level(std::span<const ItemsetRecord> level, const LevelContext& ctx,
                               const MiningConfig& config, std::uint64_t seed,
                               const JoinTruth& truth) {
  const auto params = hamming::derive_params(ctx, config.epsilon, config.delta);
  auto start = Clock::now();
  const auto index = hamming::Index::build(level, params, ctx, seed, config.workers);
  const double build_ms = ms_since(start);

  start = Clock::now();
  std::vector<QueryResult> results(level.size());
  parallel_for(level.size(), config.workers, [&](std::size_t q) {
    results[q] = hamming::query(index, level, level[q], {config.hamming_early_exit});
  });
  const double query_ms = ms_since(start);

  LevelOutcome out = collect_verified(level, results);
  count_slots(out.stats, truth, ctx.theta_count, sorted_inspections(results));
  out.stats.method = "hamming";
  out.stats.phi = index.real_positions_read();
  out.stats.params = {{"alpha_count", static_cast<double>(ctx.alpha_count)},
                      {"rho", params.rho},
                      {"k", static_cast<double>(params.k)},
                      {"L", static_cast<double>(params.tables)},
                      {"early_exit_budget", static_cast<double>(params.early_exit_budget)}};
  out.stats.build_ms = build_ms;
  out.stats.query_ms = query_ms;
  return out;
}

LevelOutcome run_covering_level(std::span<const ItemsetRecord> level, const LevelContext& ctx,
                                const MiningConfig& config, std::uint64_t seed,
                                const JoinTruth& truth) {
  const auto params =
      covering::derive_params(ctx, config.epsilon, config.delta, config.mask_dim_cap);
  auto start = Clock::now();
  const auto family = covering::Family::build(params, seed);
  const auto index = covering::Index::build(level, family, ctx, config.workers);
  const double build_ms = ms_since(start);

  start = Clock::now();
  std::vector<QueryResult> results(level.size());
  const covering::QueryOptions options{config.covering_early_exit, params.early_exit_budget};
  parallel_for(level.size(), config.workers, [&](std::size_t q) {
    results[q] = covering::query(index, family, level, level[q], options);
  });
  const double query_ms = ms_since(start);

  LevelOutcome out = collect_verified(level, results);
  count_slots(out.stats, truth, ctx.theta_count, sorted_inspections(results));
  out.stats.method = "covering";
  out.stats.phi = family.real_positions_read(ctx.n);
  out.stats.params = {{"alpha_count", static_cast<double>(ctx.alpha_count)},
                      {"n_prime", static_cast<double>(params.n_prime)},
                      {"theta_prime", static_cast<double>(params.theta_prime)},
                      {"t", static_cast<double>(params.t)},
                      {"c", params.c},
                      {"eps_round", params.eps_round},
                      {"nu", params.nu},
                      {"mask_dim", static_cast<double>(params.mask_dim)},
                      {"psi_bound", params.psi_bound},
                      {"early_exit_budget", static_cast<double>(params.early_exit_budget)}};
  out.stats.build_ms = build_ms;
  out.stats.query_ms = query_ms;
  return out;
}

LevelOutcome run_minhash_level(std::span<const ItemsetRecord> level, const LevelContext& ctx,
                               const MiningConfig& config, std::uint64_t seed,
                               const JoinTruth& truth) {
  const auto params = minhash::derive_params(ctx, config.epsilon, config.delta);
  auto start = Clock::now();
  const auto sketch = minhash::Sketch::build(level, params, ctx, seed, config.workers);
  const double build_ms = ms_since(start);

  start = Clock::now();
  std::vector<std::vector<std::size_t>> accepted(level.size());
  parallel_for(level.size(), config.workers,
               [&](std::size_t q) { accepted[q] = minhash::query(sketch, level, level[q]); });
  const double query_ms = ms_since(start);

  // Sketch decisions only propose candidates; support is checked exactly.
  start = Clock::now();
  std::map<Itemset, std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t q = 0; q < level.size(); ++q) {
    for (std::size_t a : accepted[q]) {
      candidates.try_emplace(itemset_union(level[q].items, level[a].items), q, a);
    }
  }
  LevelOutcome out;
  for (const auto& [items, pair] : candidates) {
    BitVector v = level[pair.first].vector & level[pair.second].vector;
    out.stats.verification_reads += ctx.n;
    const std::size_t support = v.count();
    if (support >= ctx.theta_count) out.frequent.push_back({items, std::move(v), support});
  }
  out.stats.verify_ms = ms_since(start);
  for (auto& acc : accepted) std::sort(acc.begin(), acc.end());
  count_slots(out.stats, truth, ctx.theta_count, accepted);
  out.stats.method = "minhash";
  out.stats.candidates = candidates.size();
  out.stats.phi = params.lambda;
  out.stats.params = {{"alpha_count", static_cast<double>(ctx.alpha_count)},
                      {"omega", params.omega},
                      {"eps_mh", params.eps_mh},
                      {"lambda", static_cast<double>(params.lambda)},
                      {"accept_threshold", params.accept_threshold}};
  out.stats.build_ms = build_ms;
  out.stats.query_ms = query_ms;
  return out;
}

LevelOutcome run_level(std::span<const ItemsetRecord> level, const JoinTruth& truth,
                       std::size_t n, std::size_t theta_count, const MiningConfig& config,
                       std::size_t level_no) {
  if (config.variant == Variant::exact) return run_exact_level(level, truth, n, theta_count);

  auto fallback = [&](std::string reason) {
    LevelOutcome out = run_exact_level(level, truth, n, theta_count);
    out.stats.fallback_reason = std::move(reason);
    // Every negative candidate is read in full, so all its slots are false positives.
    out.stats.false_positives = 2 * (truth.candidates.size() - truth.frequent);
    return out;
  };
  if (level.size() < 2) return fallback("fewer than two itemsets");
  if (truth.candidates.empty()) return fallback("no compatible pairs");

  const LevelContext ctx = make_level_context(level, n, theta_count);
  const std::uint64_t seed = derive_seed(config.seed, level_no);
  try {
    switch (config.variant) {
      case Variant::hamming:
        return run_hamming_level(level, ctx, config, seed, truth);
      case Variant::minhash:
        return run_minhash_level(level, ctx, config, seed, truth);
      case Variant::covering:
        return run_covering_level(level, ctx, config, seed, truth);
      case Variant::exact:
        break;
    }
  } catch (const DegenerateLevel& e) {
    return fallback(e.what());
  } catch (const FamilyTooLarge& e) {
    return fallback(e.what());
  }
  return run_exact_level(level, truth, n, theta_count);
}

std::size_t support_of(const TransactionDatabase& db, const Itemset& items) {
  BitVector v = db.column(items.front());
  for (std::size_t i = 1; i < items.size(); ++i) v &= db.column(items[i]);
  return v.count();
}

}  // namespace

MiningReport lsh_apriori_mine(const TransactionDatabase& db, const MiningConfig& config) {
  config.validate();
  const auto start = Clock::now();
  MiningReport report;
  report.config = config;
  report.n = db.transaction_count();
  report.m = db.item_count();
  const std::size_t n = report.n;
  const std::size_t theta_count = support_threshold(config.theta, n);
  report.result.theta_count = theta_count;

  std::vector<ItemsetRecord> level;
  LevelStats first;
  first.level = 1;
  first.method = "exact";
  {
    const auto t0 = Clock::now();
    for (ItemId item = 0; item < report.m; ++item) {
      auto rec = ItemsetRecord::singleton(db, item);
      if (rec.support >= theta_count) level.push_back(std::move(rec));
    }
    first.verify_ms = ms_since(t0);
  }
  first.candidates = first.apriori_candidates = report.m;
  first.frequent = first.apriori_frequent = level.size();
  first.verification_reads = first.transactions_read = std::uint64_t{report.m} * n;
  report.levels.push_back(first);
  report.result.tallies.push_back({1, report.m, level.size(), first.transactions_read});
  if (!level.empty()) report.result.by_level.push_back(level);

  std::size_t l = 1;
  while (!level.empty() && (!config.max_level || l < *config.max_level)) {
    ++l;
    const JoinTruth truth = exact_join(level, theta_count);
    LevelOutcome out = run_level(level, truth, n, theta_count, config, l);
    LevelStats& s = out.stats;
    s.level = l;
    s.source_itemsets = level.size();
    s.frequent = out.frequent.size();
    s.apriori_candidates = truth.candidates.size();
    s.apriori_frequent = truth.frequent;
    if (s.method != "exact") {
      s.overhead_hashes = 2 * level.size();
      s.hash_bits_read = std::uint64_t{s.overhead_hashes} * s.phi;
      s.savings = (static_cast<std::int64_t>(n) - static_cast<std::int64_t>(s.phi)) *
                  static_cast<std::int64_t>(s.true_negatives);
    }
    s.transactions_read = s.verification_reads + s.hash_bits_read;
    report.result.tallies.push_back({l, s.candidates, s.frequent, s.transactions_read});
    report.levels.push_back(std::move(s));
    level = std::move(out.frequent);
    if (!level.empty()) report.result.by_level.push_back(level);
  }
  report.total_ms = ms_since(start);
  return report;
}

AccountingCheck accounting_check(const LevelStats& stats, std::size_t n) {
  AccountingCheck check;
  check.applicable = stats.method != "exact" || !stats.fallback_reason.empty();
  check.negative_slots = 2 * (stats.apriori_candidates - stats.apriori_frequent);
  check.identity_holds = stats.true_negatives + stats.false_positives == check.negative_slots;
  check.measured_savings =
      (static_cast<std::int64_t>(n) - static_cast<std::int64_t>(stats.phi)) *
      static_cast<std::int64_t>(stats.true_negatives);
  check.overhead_bits = std::uint64_t{stats.overhead_hashes} * stats.phi;
  return check;
}

OracleComparison compare_with_oracle(const TransactionDatabase& db, const MiningConfig& config) {
  OracleComparison cmp;
  cmp.report = lsh_apriori_mine(db, config);
  cmp.oracle = brute_force_mine(db, config.theta);
  const auto& found = cmp.report.result;

  std::map<std::size_t, std::size_t> missed_by_level;
  for (const auto& items : cmp.oracle.itemsets()) {
    if (!found.contains(items)) {
      cmp.missed.push_back(items);
      ++missed_by_level[items.size()];
    }
  }
  for (const auto& items : found.itemsets()) {
    if (support_of(db, items) < found.theta_count) cmp.spurious.push_back(items);
  }
  for (auto& s : cmp.report.levels) {
    s.misses_vs_oracle = missed_by_level[s.level];
    const auto check = accounting_check(s, cmp.report.n);
    if (check.applicable && !check.identity_holds) cmp.accounting_ok = false;
  }
  return cmp;
}

TrialSummary run_trials(const TransactionDatabase& db, const MiningConfig& config,
                        std::size_t trials) {
  TrialSummary summary;
  summary.trials = trials;
  std::map<Itemset, std::size_t> misses;
  FrequentItemsetSet oracle;
  for (std::size_t t = 0; t < trials; ++t) {
    MiningConfig cfg = config;
    cfg.seed = config.seed + t;
    auto cmp = compare_with_oracle(db, cfg);
    for (const auto& items : cmp.missed) ++misses[items];
    summary.spurious += cmp.spurious.size();
    summary.total_misses += cmp.missed.size();
    summary.accounting_ok = summary.accounting_ok && cmp.accounting_ok;
    if (t == 0) oracle = std::move(cmp.oracle);
  }
  if (trials == 0) return summary;
  for (const auto& group : oracle.by_level) {
    LevelMissRate rate;
    rate.level = group.front().items.size();
    rate.oracle_itemsets = group.size();
    for (const auto& rec : group) {
      const auto it = misses.find(rec.items);
      const std::size_t k = it == misses.end() ? 0 : it->second;
      rate.misses += k;
      rate.max_itemset_miss_rate = std::max(
          rate.max_itemset_miss_rate, static_cast<double>(k) / static_cast<double>(trials));
    }
    rate.miss_rate = static_cast<double>(rate.misses) /
                     (static_cast<double>(trials) * static_cast<double>(rate.oracle_itemsets));
    rate.bound = config.delta * std::pow(2.0, static_cast<double>(rate.level));
    summary.levels.push_back(rate);
  }
  return summary;
}

}  // namespace lshmine
