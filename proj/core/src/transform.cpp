#include "lshmine/transform.hpp"

#include <algorithm>
#include <string>

#include "lshmine/error.hpp"

namespace lshmine {

LevelContext make_level_context(std::span<const ItemsetRecord> level, std::size_t n,
                                std::size_t theta_count) {
  if (level.empty()) throw Error("level context of an empty level");
  LevelContext ctx{n, level.size(), 0, theta_count};
  for (const auto& rec : level) {
    if (rec.support < theta_count) throw Error("level member below the support threshold");
    ctx.alpha_count = std::max(ctx.alpha_count, rec.support);
  }
  if (ctx.alpha_count > n) throw Error("support exceeds transaction count");
  return ctx;
}

namespace {

PaddedVector pad(const BitVector& v, const LevelContext& ctx, PadRole role) {
  if (v.size() != ctx.n) throw Error("vector length does not match n");
  const std::size_t weight = v.count();
  if (weight > ctx.alpha_count) {
    throw Error("vector weight " + std::to_string(weight) + " exceeds alpha_count " +
                std::to_string(ctx.alpha_count));
  }
  PaddedVector out{BitVector(ctx.padded_length()), role};
  for (std::size_t pos : v.ones()) out.bits.set(pos);
  const std::size_t ones = ctx.alpha_count - weight;
  const std::size_t start = role == PadRole::preprocess ? ctx.n : ctx.n + ctx.alpha_count;
  for (std::size_t i = 0; i < ones; ++i) out.bits.set(start + i);
  return out;
}

void require_pair(const PaddedVector& p, const PaddedVector& q) {
  if (p.role != PadRole::preprocess || q.role != PadRole::query) {
    throw Error("expected a (preprocess, query) padded pair");
  }
  if (p.bits.size() != q.bits.size()) throw Error("padded length mismatch");
}

}  // namespace

PaddedVector pad_preprocess(const BitVector& v, const LevelContext& ctx) {
  return pad(v, ctx, PadRole::preprocess);
}

PaddedVector pad_query(const BitVector& v, const LevelContext& ctx) {
  return pad(v, ctx, PadRole::query);
}

std::size_t padded_hamming(const PaddedVector& p, const PaddedVector& q) {
  require_pair(p, q);
  return xor_count(p.bits, q.bits);
}

Ratio padded_jaccard(const PaddedVector& p, const PaddedVector& q) {
  require_pair(p, q);
  const std::size_t both = and_count(p.bits, q.bits);
  const std::size_t either = or_count(p.bits, q.bits);
  if (either == 0) throw Error("Jaccard similarity of two empty vectors");
  return Ratio{both, either};
}

}  // namespace lshmine
