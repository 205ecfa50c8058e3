#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>

#include "lshmine/bit_vector.hpp"
#include "lshmine/dataset.hpp"

namespace lshmine {

/// Per-level quantities shared by the padding transforms and the three hash
/// families. `alpha_count` is the largest support in the level.
struct LevelContext {
  std::size_t n = 0;
  std::size_t m_l = 0;
  std::size_t alpha_count = 0;
  std::size_t theta_count = 0;

  double alpha() const { return static_cast<double>(alpha_count) / static_cast<double>(n); }
  double theta() const { return static_cast<double>(theta_count) / static_cast<double>(n); }
  std::size_t padded_length() const { return n + 2 * alpha_count; }
  bool degenerate() const { return alpha_count == theta_count; }
};

/// Builds the context of a level of theta-frequent itemsets. Throws if a
/// member is below threshold or the level is empty.
LevelContext make_level_context(std::span<const ItemsetRecord> level, std::size_t n,
                                std::size_t theta_count);

enum class PadRole { preprocess, query };

/// A transaction vector extended to n + 2*alpha_count positions so that every
/// padded vector has weight exactly alpha_count.
struct PaddedVector {
  BitVector bits;
  PadRole role = PadRole::preprocess;
};

/// v, then (alpha - |v|) ones, then (alpha + |v|) zeros.
PaddedVector pad_preprocess(const BitVector& v, const LevelContext& ctx);
/// v, then alpha zeros, then (alpha - |v|) ones, then |v| zeros.
PaddedVector pad_query(const BitVector& v, const LevelContext& ctx);

/// Bit `pos` of the padded form of `v` without materializing it. `weight`
/// must be popcount(v); positions past v.size() depend only on it.
inline bool padded_bit(const BitVector& v, std::size_t weight, std::size_t alpha_count,
                       PadRole role, std::size_t pos) {
  const std::size_t n = v.size();
  if (pos < n) return v.test(pos);
  const std::size_t off = pos - n;
  if (role == PadRole::preprocess) return off < alpha_count - weight;
  return off >= alpha_count && off < 2 * alpha_count - weight;
}

/// Exact non-negative rational.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

/// popcount(P(x) XOR Q(y)); equals 2 * (alpha_count - co_support(x, y)).
std::size_t padded_hamming(const PaddedVector& p, const PaddedVector& q);
/// |P(x) AND Q(y)| / |P(x) OR Q(y)|; equals s / (2 * alpha_count - s).
Ratio padded_jaccard(const PaddedVector& p, const PaddedVector& q);

}  // namespace lshmine
