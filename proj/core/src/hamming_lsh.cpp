#include "lshmine/hamming_lsh.hpp"

#include <cmath>
#include <random>

#include "lshmine/error.hpp"
#include "lshmine/exact.hpp"
#include "lshmine/parallel.hpp"

namespace lshmine::hamming {

namespace {

void require_fraction(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) throw Error(std::string(name) + " must be in (0,1)");
}

}  // namespace

Params derive_params(const LevelContext& ctx, double epsilon, double delta) {
  require_fraction(epsilon, "epsilon");
  require_fraction(delta, "delta");
  if (ctx.m_l < 2) throw Error("hamming parameters need at least two itemsets");
  if (ctx.degenerate()) throw DegenerateLevel("alpha equals theta; hamming LSH undefined");

  const double alpha = ctx.alpha();
  const double theta = ctx.theta();
  const double loose = (1.0 - epsilon) * theta;
  const double m = static_cast<double>(ctx.m_l);

  Params p;
  p.rho = (alpha - theta) / (alpha - loose);
  const double base = (1.0 + 2.0 * alpha) / (1.0 + 2.0 * loose);
  p.k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(m) / std::log(base))));
  p.tables = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::pow(m, p.rho) * std::log(1.0 / delta))));
  p.early_exit_budget = static_cast<std::size_t>(std::ceil(static_cast<double>(p.tables) / delta));
  return p;
}

Index Index::build(std::span<const ItemsetRecord> level, const Params& params,
                   const LevelContext& ctx, std::uint64_t seed, unsigned workers) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(ctx.padded_length() - 1));
  std::vector<Projection> projections(params.tables, Projection(params.k));
  for (auto& proj : projections) {
    for (auto& pos : proj) pos = pick(rng);
  }
  return build_with_projections(level, params, ctx, std::move(projections), workers);
}

Index Index::build_with_projections(std::span<const ItemsetRecord> level, const Params& params,
                                    const LevelContext& ctx, std::vector<Projection> projections,
                                    unsigned workers) {
  Index index;
  index.params_ = params;
  index.ctx_ = ctx;
  index.projections_ = std::move(projections);
  index.params_.tables = index.projections_.size();

  std::vector<bool> touched(ctx.n, false);
  for (const auto& proj : index.projections_) {
    for (auto pos : proj) {
      if (pos >= ctx.padded_length()) throw Error("projection position out of range");
      if (pos < ctx.n && !touched[pos]) {
        touched[pos] = true;
        ++index.real_positions_;
      }
    }
  }

  index.tables_.resize(index.projections_.size());
  parallel_for(index.tables_.size(), workers, [&](std::size_t t) {
    auto& table = index.tables_[t];
    for (std::size_t a = 0; a < level.size(); ++a) {
      table[index.key(level[a].vector, level[a].support, PadRole::preprocess, t)].push_back(
          static_cast<std::uint32_t>(a));
    }
  });
  return index;
}

BitVector Index::key(const BitVector& v, std::size_t weight, PadRole role,
                     std::size_t table) const {
  const auto& proj = projections_[table];
  BitVector out(proj.size());
  for (std::size_t i = 0; i < proj.size(); ++i) {
    if (padded_bit(v, weight, ctx_.alpha_count, role, proj[i])) out.set(i);
  }
  return out;
}

std::span<const std::uint32_t> Index::bucket(std::size_t table, const BitVector& key) const {
  const auto& t = tables_[table];
  auto it = t.find(key);
  if (it == t.end()) return {};
  return it->second;
}

QueryResult query(const Index& index, std::span<const ItemsetRecord> level,
                  const ItemsetRecord& q, QueryOptions options) {
  const auto& ctx = index.context();
  const std::size_t budget = index.params().early_exit_budget;
  QueryResult result;
  std::vector<char> visited(level.size(), 0);

  for (std::size_t t = 0; t < index.projections().size(); ++t) {
    const BitVector key = index.key(q.vector, q.support, PadRole::query, t);
    for (std::uint32_t a : index.bucket(t, key)) {
      if (level[a].items == q.items) continue;
      ++result.collisions;
      if (visited[a]) continue;
      visited[a] = 1;
      if (!compatible(level[a].items, q.items)) continue;
      if (options.early_exit && result.partners.empty() && result.inspected.size() >= budget) {
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

}  // namespace lshmine::hamming
