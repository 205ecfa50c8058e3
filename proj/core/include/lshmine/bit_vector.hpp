#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lshmine {

/// Fixed-length dense bit vector backed by 64-bit words. Bits past `size()`
/// in the last word are always zero, so word-wise popcounts are exact.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length, bool value = false);

  /// Parses a string of '0'/'1' characters, position 0 first.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }

  bool test(std::size_t pos) const {
    return (words_[pos >> 6] >> (pos & 63)) & 1U;
  }
  void set(std::size_t pos, bool value = true);

  std::size_t count() const;
  bool none() const;

  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  BitVector& operator^=(const BitVector& other);

  friend BitVector operator&(BitVector lhs, const BitVector& rhs) { return lhs &= rhs; }
  friend BitVector operator|(BitVector lhs, const BitVector& rhs) { return lhs |= rhs; }
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::span<const std::uint64_t> words() const { return words_; }

  /// Positions of the set bits in increasing order.
  std::vector<std::size_t> ones() const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  void clear_tail();
  void require_same_length(const BitVector& other) const;

  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const { return v.hash(); }
};

/// popcount(x AND y); throws on length mismatch.
std::size_t and_count(const BitVector& x, const BitVector& y);
/// popcount(x XOR y); throws on length mismatch.
std::size_t xor_count(const BitVector& x, const BitVector& y);
/// popcount(x OR y); throws on length mismatch.
std::size_t or_count(const BitVector& x, const BitVector& y);

}  // namespace lshmine
