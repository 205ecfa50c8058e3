#include "lshmine/minhash_lsh.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "lshmine/error.hpp"
#include "lshmine/exact.hpp"
#include "lshmine/parallel.hpp"
#include "lshmine/random.hpp"

namespace lshmine::minhash {

Params derive_params(const LevelContext& ctx, double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must be in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must be in (0,1)");

  const double alpha = ctx.alpha();
  const double theta = ctx.theta();
  const double loose = (1.0 - epsilon) * theta;

  Params p;
  p.omega = loose / (2.0 * alpha - loose);
  p.eps_mh = alpha * epsilon / (alpha + (alpha - theta) * (1.0 - epsilon));
  p.accept_threshold = (1.0 - p.eps_mh) * theta / (2.0 * alpha - theta);
  const double raw = 2.0 / (p.omega * p.eps_mh * p.eps_mh) * std::log(1.0 / delta);
  if (!std::isfinite(raw) || raw > static_cast<double>(kMaxLambda)) {
    throw Error("tolerance too small: minhash sketch would need more than " +
                std::to_string(kMaxLambda) + " rows");
  }
  p.lambda = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
  return p;
}

Sketch Sketch::build(std::span<const ItemsetRecord> level, const Params& params,
                     const LevelContext& ctx, std::uint64_t seed, unsigned workers) {
  if (params.lambda == 0) throw Error("sketch needs at least one row");
  Sketch s;
  s.params_ = params;
  s.ctx_ = ctx;
  s.universe_ = ctx.padded_length();
  s.members_ = level.size();

  // Fisher-Yates per row, each row with its own stream so rows can be drawn
  // in parallel without changing the result.
  s.ranks_.resize(params.lambda * s.universe_);
  parallel_for(params.lambda, workers, [&](std::size_t r) {
    std::mt19937_64 rng(derive_seed(seed, r));
    std::vector<std::uint32_t> perm(s.universe_);
    std::iota(perm.begin(), perm.end(), 0U);
    for (std::size_t i = s.universe_; i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(perm[i - 1], perm[pick(rng)]);
    }
    auto* ranks = s.ranks_.data() + r * s.universe_;
    for (std::size_t i = 0; i < s.universe_; ++i) ranks[perm[i]] = static_cast<std::uint32_t>(i);
  });

  s.fill_columns(level, workers);
  return s;
}

Sketch Sketch::build_with_ranks(std::span<const ItemsetRecord> level, Params params,
                                const LevelContext& ctx,
                                std::span<const std::vector<std::uint32_t>> ranks,
                                unsigned workers) {
  if (ranks.empty()) throw Error("sketch needs at least one row");
  params.lambda = ranks.size();
  Sketch s;
  s.params_ = params;
  s.ctx_ = ctx;
  s.universe_ = ctx.padded_length();
  s.members_ = level.size();
  s.ranks_.reserve(params.lambda * s.universe_);
  for (const auto& row : ranks) {
    if (row.size() != s.universe_) throw Error("permutation size does not match padded length");
    s.ranks_.insert(s.ranks_.end(), row.begin(), row.end());
  }
  s.fill_columns(level, workers);
  return s;
}

void Sketch::fill_columns(std::span<const ItemsetRecord> level, unsigned workers) {
  columns_.resize(members_ * params_.lambda);
  parallel_for(members_, workers, [&](std::size_t a) {
    const auto values = sketch(level[a].vector, level[a].support, PadRole::preprocess);
    std::copy(values.begin(), values.end(), columns_.begin() + a * params_.lambda);
  });
}

std::span<const std::uint32_t> Sketch::column(std::size_t a) const {
  return {columns_.data() + a * params_.lambda, params_.lambda};
}

std::span<const std::uint32_t> Sketch::ranks(std::size_t row) const {
  return {ranks_.data() + row * universe_, universe_};
}

std::vector<std::uint32_t> Sketch::sketch(const BitVector& v, std::size_t weight,
                                          PadRole role) const {
  if (v.size() != ctx_.n) throw Error("vector length does not match n");
  if (weight > ctx_.alpha_count) throw Error("vector weight exceeds alpha_count");
  const auto ones = v.ones();
  const std::size_t pad_begin = role == PadRole::preprocess ? ctx_.n : ctx_.n + ctx_.alpha_count;
  const std::size_t pad_end = pad_begin + (ctx_.alpha_count - weight);
  if (ones.empty() && pad_begin == pad_end) throw Error("minhash of an empty set");

  std::vector<std::uint32_t> out(params_.lambda);
  for (std::size_t r = 0; r < params_.lambda; ++r) {
    const auto* ranks = ranks_.data() + r * universe_;
    std::uint32_t best_rank = std::numeric_limits<std::uint32_t>::max();
    std::size_t best_pos = 0;
    for (std::size_t pos : ones) {
      if (ranks[pos] < best_rank) {
        best_rank = ranks[pos];
        best_pos = pos;
      }
    }
    for (std::size_t pos = pad_begin; pos < pad_end; ++pos) {
      if (ranks[pos] < best_rank) {
        best_rank = ranks[pos];
        best_pos = pos;
      }
    }
    out[r] = static_cast<std::uint32_t>(best_pos);
  }
  return out;
}

double estimate_js(std::span<const std::uint32_t> a, std::span<const std::uint32_t> q) {
  if (a.size() != q.size() || a.empty()) throw Error("sketch columns differ in row count");
  std::size_t matches = 0;
  for (std::size_t r = 0; r < a.size(); ++r) matches += a[r] == q[r] ? 1 : 0;
  return static_cast<double>(matches) / static_cast<double>(a.size());
}

std::vector<std::size_t> query(const Sketch& sketch, std::span<const ItemsetRecord> level,
                               const ItemsetRecord& q) {
  std::vector<std::size_t> out;
  if (level.empty()) return out;
  const auto probe = sketch.sketch(q.vector, q.support, PadRole::query);
  const double threshold = sketch.params().accept_threshold - 1e-12;
  for (std::size_t a = 0; a < level.size(); ++a) {
    if (level[a].items == q.items || !compatible(level[a].items, q.items)) continue;
    if (estimate_js(sketch.column(a), probe) >= threshold) out.push_back(a);
  }
  return out;
}

}  // namespace lshmine::minhash
