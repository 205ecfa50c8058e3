#include "lshmine/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "lshmine/error.hpp"

namespace lshmine {

TransactionDatabase TransactionDatabase::from_transactions(
    std::span<const std::vector<ItemId>> transactions, std::size_t item_count) {
  const std::size_t n = transactions.size();
  if (n == 0) throw Error("empty database");

  std::size_t m = item_count;
  for (const auto& t : transactions) {
    for (ItemId item : t) m = std::max<std::size_t>(m, std::size_t{item} + 1);
  }
  if (m == 0) throw Error("empty database");

  std::vector<BitVector> columns(m, BitVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (ItemId item : transactions[j]) columns[item].set(j);
  }
  return TransactionDatabase(n, std::move(columns));
}

const BitVector& TransactionDatabase::column(ItemId item) const {
  if (item >= columns_.size()) {
    throw Error("item id " + std::to_string(item) + " out of range");
  }
  return columns_[item];
}

std::vector<ItemId> TransactionDatabase::transaction(std::size_t j) const {
  std::vector<ItemId> items;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].test(j)) items.push_back(static_cast<ItemId>(i));
  }
  return items;
}

ItemsetRecord ItemsetRecord::singleton(const TransactionDatabase& db, ItemId item) {
  const BitVector& col = db.column(item);
  return ItemsetRecord{{item}, col, col.count()};
}

TransactionDatabase parse_transactions(std::istream& in) {
  std::vector<std::vector<ItemId>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<ItemId> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      const char* tok = p;
      while (p < end && *p != ' ' && *p != '\t') ++p;
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(tok, p, value);
      if (ec != std::errc{} || ptr != p || value > 0xffffffffULL) {
        throw Error("line " + std::to_string(line_no) + ": invalid item id '" +
                    std::string(tok, p) + "'");
      }
      row.push_back(static_cast<ItemId>(value));
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    rows.push_back(std::move(row));
  }
  return TransactionDatabase::from_transactions(rows);
}

TransactionDatabase load_transactions(const std::filesystem::path& path, InputFormat format) {
  if (format != InputFormat::fimi) throw Error("unsupported input format");
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_transactions(in);
}

void write_transactions(const TransactionDatabase& db, std::ostream& out) {
  for (std::size_t j = 0; j < db.transaction_count(); ++j) {
    const auto items = db.transaction(j);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i != 0) out << ' ';
      out << items[i];
    }
    out << '\n';
  }
}

std::size_t co_support(const BitVector& x, const BitVector& y) { return and_count(x, y); }

TransactionDatabase generate_synthetic(std::size_t n, std::size_t m, double density,
                                       std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error("density must be in (0,1]");
  }
  if (n == 0 || m == 0) throw Error("empty database");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<ItemId>> rows(n);
  for (auto& row : rows) {
    for (std::size_t i = 0; i < m; ++i) {
      if (coin(rng)) row.push_back(static_cast<ItemId>(i));
    }
  }
  return TransactionDatabase::from_transactions(rows, m);
}

}  // namespace lshmine
