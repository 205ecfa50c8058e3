#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lshmine/bit_vector.hpp"

namespace lshmine {

using ItemId = std::uint32_t;

/// Transactions stored column-wise: one n-bit transaction vector per item.
/// Immutable once built.
class TransactionDatabase {
 public:
  /// Builds the vertical representation from row-wise transactions. Empty
  /// transactions count towards n. m is 1 + the largest item id, or
  /// `item_count` when that is larger.
  static TransactionDatabase from_transactions(
      std::span<const std::vector<ItemId>> transactions, std::size_t item_count = 0);

  std::size_t transaction_count() const { return n_; }
  std::size_t item_count() const { return columns_.size(); }

  const BitVector& column(ItemId item) const;
  std::span<const BitVector> columns() const { return columns_; }

  /// Items of transaction `j`, ascending. Reconstructed from the columns.
  std::vector<ItemId> transaction(std::size_t j) const;

 private:
  TransactionDatabase(std::size_t n, std::vector<BitVector> columns)
      : n_(n), columns_(std::move(columns)) {}

  std::size_t n_ = 0;
  std::vector<BitVector> columns_;
};

/// An itemset in canonical (strictly increasing) order together with its
/// transaction vector and support.
struct ItemsetRecord {
  std::vector<ItemId> items;
  BitVector vector;
  std::size_t support = 0;

  static ItemsetRecord singleton(const TransactionDatabase& db, ItemId item);
};

enum class InputFormat { fimi };

/// FIMI flat format: one transaction per line, whitespace-separated item ids.
TransactionDatabase load_transactions(const std::filesystem::path& path,
                                      InputFormat format = InputFormat::fimi);
TransactionDatabase parse_transactions(std::istream& in);
void write_transactions(const TransactionDatabase& db, std::ostream& out);

/// Number of positions where both vectors are set.
std::size_t co_support(const BitVector& x, const BitVector& y);

/// Every item occurs in every transaction independently with probability
/// `density`. Deterministic in `seed`.
TransactionDatabase generate_synthetic(std::size_t n, std::size_t m, double density,
                                       std::uint64_t seed);

}  // namespace lshmine
