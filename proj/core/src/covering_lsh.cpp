#include "lshmine/covering_lsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "lshmine/error.hpp"
#include "lshmine/exact.hpp"
#include "lshmine/parallel.hpp"

namespace lshmine::covering {

Params derive_params(const LevelContext& ctx, double epsilon, double delta,
                     std::size_t mask_dim_cap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must be in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must be in (0,1)");
  if (ctx.degenerate()) throw DegenerateLevel("alpha equals theta; covering tolerance undefined");

  const double alpha = ctx.alpha();
  const double theta = ctx.theta();
  const double loose = (1.0 - epsilon) * theta;
  const double m = static_cast<double>(std::max<std::size_t>(ctx.m_l, 1));

  Params p;
  p.n_prime = ctx.padded_length();
  p.theta_prime = 2 * (ctx.alpha_count - ctx.theta_count);
  const double raw_t = std::log(m) / (2.0 * (alpha - loose) * static_cast<double>(ctx.n));
  p.t = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw_t)));
  p.eps_round = static_cast<double>(p.t) - raw_t;
  p.c = (alpha - loose) / (alpha - theta);
  p.nu = (static_cast<double>(p.t) + p.eps_round) / (p.c * static_cast<double>(p.t));
  p.psi_bound = std::pow(2.0, static_cast<double>(p.theta_prime) * p.eps_round + 1.0) *
                std::pow(m, 1.0 / p.c);
  p.early_exit_budget = static_cast<std::size_t>(std::ceil(p.psi_bound / delta));

  const std::size_t cap = std::min(mask_dim_cap, kMaxMaskDim);
  if (p.theta_prime > (cap - 1) / p.t) {
    throw FamilyTooLarge("covering family too large: mask dimension " +
                         std::to_string(p.t * p.theta_prime + 1) + " exceeds cap " +
                         std::to_string(cap));
  }
  p.mask_dim = p.t * p.theta_prime + 1;
  const std::size_t bytes = estimated_index_bytes(p.mask_dim, p.n_prime, ctx.m_l);
  if (bytes > kMaxIndexBytes) {
    throw FamilyTooLarge("covering family too large: index for mask dimension " +
                         std::to_string(p.mask_dim) + " needs about " +
                         std::to_string(bytes >> 20) + " MiB");
  }
  return p;
}

std::size_t estimated_index_bytes(std::size_t mask_dim, std::size_t n_prime, std::size_t m_l) {
  if (mask_dim >= 48) return SIZE_MAX;
  const std::size_t masks = (std::size_t{1} << mask_dim) - 1;
  // One mask vector and one sorted (hash, member) table per mask.
  const std::size_t per_mask = sizeof(BitVector) + 8 * ((n_prime + 63) / 64) +
                               sizeof(std::vector<int>) + 16 * m_l + 32;
  if (per_mask > SIZE_MAX / masks) return SIZE_MAX;
  return masks * per_mask;
}

Family Family::build(const Params& params, std::uint64_t seed) {
  return build(params.n_prime, params.mask_dim, seed);
}

Family Family::build(std::size_t n_prime, std::size_t mask_dim, std::uint64_t seed) {
  if (mask_dim == 0 || mask_dim > kMaxMaskDim) throw Error("mask dimension out of range");
  std::mt19937_64 rng(seed);
  const std::uint64_t keep = mask_dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << mask_dim) - 1;
  std::vector<std::uint64_t> phi(n_prime);
  for (auto& word : phi) word = rng() & keep;
  return from_phi(std::move(phi), mask_dim);
}

Family Family::from_phi(std::vector<std::uint64_t> phi, std::size_t mask_dim) {
  if (mask_dim == 0 || mask_dim > kMaxMaskDim) throw Error("mask dimension out of range");
  Family f;
  f.mask_dim_ = mask_dim;
  f.phi_ = std::move(phi);
  const std::uint64_t count = (std::uint64_t{1} << mask_dim) - 1;
  f.masks_.reserve(count);
  for (std::uint64_t v = 1; v <= count; ++v) {
    BitVector mask(f.phi_.size());
    for (std::size_t i = 0; i < f.phi_.size(); ++i) {
      if (std::popcount(f.phi_[i] & v) & 1) mask.set(i);
    }
    f.masks_.push_back(std::move(mask));
  }
  return f;
}

std::size_t Family::real_positions_read(std::size_t n) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < std::min(n, phi_.size()); ++i) count += phi_[i] != 0 ? 1 : 0;
  return count;
}

bool verify_covering(const Family& family, std::span<const std::size_t> positions) {
  // A nonzero v orthogonal to all phi(i) exists iff their span is a proper
  // subspace; compute the rank by elimination on a xor basis.
  std::vector<std::uint64_t> basis;
  for (std::size_t pos : positions) {
    if (pos >= family.n_prime()) {
      throw Error("position " + std::to_string(pos) + " out of range");
    }
    std::uint64_t x = family.phi()[pos];
    for (std::uint64_t b : basis) x = std::min(x, x ^ b);
    if (x != 0) {
      basis.push_back(x);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return basis.size() < family.mask_dim();
}

namespace {

std::uint64_t masked_hash(const BitVector& v, const BitVector& mask) {
  auto a = v.words();
  auto b = mask.words();
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < a.size(); ++i) {
    h ^= a[i] & b[i];
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return h;
}

bool masked_equal(const BitVector& x, const BitVector& y, const BitVector& mask) {
  auto a = x.words();
  auto b = y.words();
  auto m = mask.words();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] ^ b[i]) & m[i]) return false;
  }
  return true;
}

}  // namespace

Index Index::build(std::span<const ItemsetRecord> level, const Family& family,
                   const LevelContext& ctx, unsigned workers) {
  if (family.n_prime() != ctx.padded_length()) {
    throw Error("covering family dimension does not match the level's padded length");
  }
  Index index;
  index.ctx_ = ctx;
  index.padded_.reserve(level.size());
  for (const auto& rec : level) index.padded_.push_back(pad_preprocess(rec.vector, ctx).bits);

  index.tables_.resize(family.mask_count());
  parallel_for(family.mask_count(), workers, [&](std::size_t j) {
    auto& table = index.tables_[j];
    table.reserve(index.padded_.size());
    for (std::size_t a = 0; a < index.padded_.size(); ++a) {
      table.emplace_back(masked_hash(index.padded_[a], family.mask(j)),
                         static_cast<std::uint32_t>(a));
    }
    std::sort(table.begin(), table.end());
  });
  return index;
}

std::vector<std::uint32_t> Index::bucket(const Family& family, std::size_t j,
                                         const BitVector& padded_query) const {
  const auto& mask = family.mask(j);
  const auto& table = tables_[j];
  const std::uint64_t h = masked_hash(padded_query, mask);
  auto it = std::lower_bound(table.begin(), table.end(), Entry{h, 0});
  std::vector<std::uint32_t> out;
  for (; it != table.end() && it->first == h; ++it) {
    if (masked_equal(padded_[it->second], padded_query, mask)) out.push_back(it->second);
  }
  return out;
}

std::size_t Index::bucket_count(std::size_t j) const {
  const auto& table = tables_[j];
  std::size_t count = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == 0 || table[i].first != table[i - 1].first) ++count;
  }
  return count;
}

QueryResult query(const Index& index, const Family& family, std::span<const ItemsetRecord> level,
                  const ItemsetRecord& q, QueryOptions options) {
  const auto& ctx = index.context();
  const BitVector probe = pad_query(q.vector, ctx).bits;
  QueryResult result;
  std::vector<char> visited(level.size(), 0);

  for (std::size_t j = 0; j < family.mask_count(); ++j) {
    for (std::uint32_t a : index.bucket(family, j, probe)) {
      if (level[a].items == q.items) continue;
      ++result.collisions;
      if (visited[a]) continue;
      visited[a] = 1;
      if (!compatible(level[a].items, q.items)) continue;
      if (options.early_exit && result.partners.empty() &&
          result.inspected.size() >= options.early_exit_budget) {
        result.early_exit = true;
        return result;
      }
      result.inspected.push_back(a);
      result.verification_reads += ctx.n;
      if (co_support(level[a].vector, q.vector) >= ctx.theta_count) result.partners.push_back(a);
    }
  }
  return result;
}

}  // namespace lshmine::covering
