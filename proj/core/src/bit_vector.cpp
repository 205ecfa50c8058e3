#include "lshmine/bit_vector.hpp"

#include <bit>

#include "lshmine/error.hpp"

namespace lshmine {

namespace {

constexpr std::size_t word_count(std::size_t length) { return (length + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t length, bool value)
    : length_(length), words_(word_count(length), value ? ~std::uint64_t{0} : 0) {
  clear_tail();
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw Error("invalid bit character '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

void BitVector::set(std::size_t pos, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
  if (value) {
    words_[pos >> 6] |= mask;
  } else {
    words_[pos >> 6] &= ~mask;
  }
}

std::size_t BitVector::count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::vector<std::size_t> BitVector::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::size_t BitVector::hash() const {
  // FNV-1a over the words, seeded with the length.
  std::uint64_t h = 1469598103934665603ULL ^ length_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

void BitVector::clear_tail() {
  const std::size_t rem = length_ & 63;
  if (rem != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << rem) - 1;
  }
}

void BitVector::require_same_length(const BitVector& other) const {
  if (length_ != other.length_) {
    throw Error("bit vector length mismatch: " + std::to_string(length_) + " vs " +
                std::to_string(other.length_));
  }
}

std::size_t and_count(const BitVector& x, const BitVector& y) {
  if (x.size() != y.size()) throw Error("bit vector length mismatch");
  auto a = x.words();
  auto b = y.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return total;
}

std::size_t xor_count(const BitVector& x, const BitVector& y) {
  if (x.size() != y.size()) throw Error("bit vector length mismatch");
  auto a = x.words();
  auto b = y.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  }
  return total;
}

std::size_t or_count(const BitVector& x, const BitVector& y) {
  if (x.size() != y.size()) throw Error("bit vector length mismatch");
  auto a = x.words();
  auto b = y.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(a[i] | b[i]));
  }
  return total;
}

}  // namespace lshmine
