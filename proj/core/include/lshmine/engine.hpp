#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lshmine/covering_lsh.hpp"
#include "lshmine/dataset.hpp"
#include "lshmine/exact.hpp"

namespace lshmine {

enum class Variant { exact, hamming, minhash, covering };

std::string_view to_string(Variant v);
/// Throws Error on an unknown name.
Variant parse_variant(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 20160901;

struct MiningConfig {
  double theta = 0.5;
  double epsilon = 0.2;
  double delta = 0.1;
  Variant variant = Variant::exact;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> max_level;
  bool covering_early_exit = false;
  bool hamming_early_exit = true;
  std::size_t mask_dim_cap = covering::kDefaultMaskDimCap;
  unsigned workers = 1;

  /// Throws Error naming the first invalid field.
  void validate() const;
};

/// Counters for producing level `level` (itemsets of that size) from the
/// previous level's frequent itemsets. Read counts are bit touches: a full
/// support check reads n, a hash evaluation reads `phi`.
struct LevelStats {
  std::size_t level = 0;
  std::string method;           // exact, hamming, minhash, covering
  std::string fallback_reason;  // set when an LSH level ran the exact join
  std::size_t source_itemsets = 0;     // m_{l-1}
  std::size_t candidates = 0;          // distinct candidates the variant produced
  std::size_t frequent = 0;            // m_l
  std::size_t apriori_candidates = 0;  // c_l of the exact join on the same input
  std::size_t apriori_frequent = 0;    // frequent among those
  std::uint64_t verification_reads = 0;
  std::uint64_t hash_bits_read = 0;
  std::uint64_t transactions_read = 0;  // verification_reads + hash_bits_read
  std::size_t phi = 0;                  // reads per hash evaluation
  std::size_t overhead_hashes = 0;      // 2 * m_{l-1} for LSH levels
  std::size_t true_negatives = 0;
  std::size_t false_positives = 0;
  std::int64_t savings = 0;  // (n - phi) * true_negatives
  std::vector<std::pair<std::string, double>> params;
  std::optional<std::size_t> misses_vs_oracle;
  double build_ms = 0.0;
  double query_ms = 0.0;
  double verify_ms = 0.0;
};

struct MiningReport {
  MiningConfig config;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<LevelStats> levels;
  FrequentItemsetSet result;
  double total_ms = 0.0;
};

/// Level-wise mining. Level 1 is exact; later levels build candidates from the
/// variant's FI_q sets. Hamming and covering verify support while querying;
/// minhash candidates get an exact support scan afterwards. Levels where the
/// variant is undefined (alpha == theta, family over the cap, fewer than two
/// itemsets) run the exact join and record the reason.
MiningReport lsh_apriori_mine(const TransactionDatabase& db, const MiningConfig& config);

struct AccountingCheck {
  bool applicable = false;  // false for exact levels
  bool identity_holds = false;
  std::size_t negative_slots = 0;  // 2 (c - m)
  std::int64_t measured_savings = 0;
  std::uint64_t overhead_bits = 0;
};

/// TN + FP == 2 (c_l - m_l) against the exact join on the same input, plus
/// the measured savings and hashing overhead.
AccountingCheck accounting_check(const LevelStats& stats, std::size_t n);

struct OracleComparison {
  MiningReport report;
  FrequentItemsetSet oracle;
  std::vector<Itemset> missed;    // frequent, not reported
  std::vector<Itemset> spurious;  // reported, below threshold
  bool accounting_ok = true;
};

/// Runs the miner and diffs it against brute-force enumeration. Requires
/// m <= kBruteForceMaxItems.
OracleComparison compare_with_oracle(const TransactionDatabase& db, const MiningConfig& config);

struct LevelMissRate {
  std::size_t level = 0;
  std::size_t oracle_itemsets = 0;
  std::size_t misses = 0;              // over all trials
  double miss_rate = 0.0;              // misses / (trials * oracle_itemsets)
  double max_itemset_miss_rate = 0.0;  // worst single itemset
  double bound = 0.0;                  // delta * 2^level
};

struct TrialSummary {
  std::size_t trials = 0;
  std::vector<LevelMissRate> levels;
  std::size_t spurious = 0;
  std::size_t total_misses = 0;
  bool accounting_ok = true;
};

/// Repeats compare_with_oracle with seeds seed, seed+1, ...
TrialSummary run_trials(const TransactionDatabase& db, const MiningConfig& config,
                        std::size_t trials);

}  // namespace lshmine
