#include "lshmine/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lshmine/error.hpp"

namespace lshmine {

namespace {

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw Error("theta must be in (0,1)");
}

bool less_items(const ItemsetRecord& a, const ItemsetRecord& b) { return a.items < b.items; }

}  // namespace

std::size_t FrequentItemsetSet::total() const {
  std::size_t t = 0;
  for (const auto& level : by_level) t += level.size();
  return t;
}

std::vector<Itemset> FrequentItemsetSet::itemsets() const {
  std::vector<Itemset> out;
  for (const auto& level : by_level) {
    for (const auto& rec : level) out.push_back(rec.items);
  }
  return out;
}

bool FrequentItemsetSet::contains(const Itemset& items) const {
  if (items.empty() || items.size() > by_level.size()) return false;
  const auto& level = by_level[items.size() - 1];
  return std::binary_search(level.begin(), level.end(), ItemsetRecord{items, {}, 0}, less_items);
}

std::size_t support_threshold(double theta, std::size_t n) {
  const double raw = theta * static_cast<double>(n);
  auto count = static_cast<std::size_t>(std::ceil(raw));
  // theta*n that should be integral but landed just above it.
  if (count > 0 && static_cast<double>(count - 1) >= raw - 1e-9 * std::max(1.0, raw)) --count;
  return std::max<std::size_t>(count, 1);
}

bool compatible(std::span<const ItemId> a, std::span<const ItemId> b) {
  if (a.size() != b.size() || a.empty()) return false;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return common + 1 == a.size();
}

Itemset itemset_union(std::span<const ItemId> a, std::span<const ItemId> b) {
  Itemset out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<JoinCandidate> join_with_sources(std::span<const ItemsetRecord> level) {
  std::map<Itemset, std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      if (!compatible(level[i].items, level[j].items)) continue;
      seen.try_emplace(itemset_union(level[i].items, level[j].items), i, j);
    }
  }
  std::vector<JoinCandidate> out;
  out.reserve(seen.size());
  for (auto& [items, pair] : seen) out.push_back({items, pair.first, pair.second});
  return out;
}

std::vector<Itemset> join_compatible(std::span<const ItemsetRecord> level) {
  std::vector<Itemset> out;
  for (auto& c : join_with_sources(level)) out.push_back(std::move(c.items));
  return out;
}

FrequentItemsetSet apriori_mine(const TransactionDatabase& db, double theta) {
  require_theta(theta);
  const std::size_t n = db.transaction_count();
  FrequentItemsetSet result;
  result.theta_count = support_threshold(theta, n);

  std::vector<ItemsetRecord> frequent;
  LevelTally first{1, db.item_count(), 0, 0};
  for (std::size_t i = 0; i < db.item_count(); ++i) {
    auto rec = ItemsetRecord::singleton(db, static_cast<ItemId>(i));
    first.transactions_read += n;
    if (rec.support >= result.theta_count) frequent.push_back(std::move(rec));
  }
  first.frequent = frequent.size();
  result.tallies.push_back(first);

  std::size_t level = 1;
  while (!frequent.empty()) {
    result.by_level.push_back(frequent);
    ++level;
    const auto candidates = join_with_sources(frequent);
    LevelTally tally{level, candidates.size(), 0, 0};
    std::vector<ItemsetRecord> next;
    for (const auto& c : candidates) {
      BitVector v = frequent[c.first].vector & frequent[c.second].vector;
      tally.transactions_read += n;
      const std::size_t support = v.count();
      if (support >= result.theta_count) next.push_back({c.items, std::move(v), support});
    }
    tally.frequent = next.size();
    result.tallies.push_back(tally);
    frequent = std::move(next);
  }
  return result;
}

FrequentItemsetSet brute_force_mine(const TransactionDatabase& db, double theta) {
  require_theta(theta);
  const std::size_t m = db.item_count();
  if (m > kBruteForceMaxItems) {
    throw Error("brute force needs m <= " + std::to_string(kBruteForceMaxItems) + ", got " +
                std::to_string(m));
  }
  const std::size_t n = db.transaction_count();

  std::vector<std::uint32_t> rows(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (ItemId item : db.transaction(j)) rows[j] |= std::uint32_t{1} << item;
  }

  FrequentItemsetSet result;
  result.theta_count = support_threshold(theta, n);
  std::vector<std::vector<ItemsetRecord>> levels(m);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    BitVector v(n);
    std::size_t support = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((rows[j] & mask) == mask) {
        v.set(j);
        ++support;
      }
    }
    if (support < result.theta_count) continue;
    Itemset items;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::uint32_t{1} << i)) items.push_back(static_cast<ItemId>(i));
    }
    levels[items.size() - 1].push_back({std::move(items), std::move(v), support});
  }
  for (auto& level : levels) {
    if (level.empty()) break;
    std::sort(level.begin(), level.end(), less_items);
    result.tallies.push_back({result.by_level.size() + 1, 0, level.size(), 0});
    result.by_level.push_back(std::move(level));
  }
  return result;
}

}  // namespace lshmine
