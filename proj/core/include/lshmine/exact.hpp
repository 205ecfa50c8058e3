#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lshmine/dataset.hpp"

namespace lshmine {

using Itemset = std::vector<ItemId>;

/// Per-level counters of a level-wise mining run.
struct LevelTally {
  std::size_t level = 0;
  std::size_t candidates = 0;
  std::size_t frequent = 0;
  std::uint64_t transactions_read = 0;
};

/// Frequent itemsets grouped by size. `by_level[0]` holds the singletons;
/// only non-empty levels are stored.
struct FrequentItemsetSet {
  std::size_t theta_count = 0;
  std::vector<std::vector<ItemsetRecord>> by_level;
  std::vector<LevelTally> tallies;

  std::size_t total() const;
  /// All itemsets, ordered by (size, lexicographic items).
  std::vector<Itemset> itemsets() const;
  bool contains(const Itemset& items) const;
};

/// ceil(theta * n), robust to binary rounding of theta * n.
std::size_t support_threshold(double theta, std::size_t n);

/// True iff the two equal-size sorted itemsets differ in exactly one item.
bool compatible(std::span<const ItemId> a, std::span<const ItemId> b);

/// Sorted union of two sorted itemsets.
Itemset itemset_union(std::span<const ItemId> a, std::span<const ItemId> b);

/// A join candidate together with the first (lexicographic by level index)
/// pair of level members producing it.
struct JoinCandidate {
  Itemset items;
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Pairwise join of equal-size itemsets: every union of size l+1, deduplicated
/// and sorted.
std::vector<Itemset> join_compatible(std::span<const ItemsetRecord> level);
std::vector<JoinCandidate> join_with_sources(std::span<const ItemsetRecord> level);

/// Level-wise Apriori: candidates from the pairwise join, filtered by an
/// exact support scan. Each support check reads n transactions.
FrequentItemsetSet apriori_mine(const TransactionDatabase& db, double theta);

/// Enumerates all 2^m - 1 itemsets from the row view. Requires m <= 20.
FrequentItemsetSet brute_force_mine(const TransactionDatabase& db, double theta);

inline constexpr std::size_t kBruteForceMaxItems = 20;

}  // namespace lshmine
