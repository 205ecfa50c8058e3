#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "lshmine/bit_vector.hpp"
#include "lshmine/dataset.hpp"
#include "lshmine/query_result.hpp"
#include "lshmine/transform.hpp"

namespace lshmine::hamming {

/// Bit-sampling parameters for one level.
struct Params {
  double rho = 0.0;
  std::size_t k = 0;       // sampled bits per bucket key
  std::size_t tables = 0;  // L
  std::size_t early_exit_budget = 0;  // ceil(L / delta)
};

/// rho = (alpha - theta) / (alpha - (1-eps) theta)
/// k   = ceil(ln m_l / ln((1 + 2 alpha) / (1 + 2 (1-eps) theta)))
/// L   = ceil(m_l^rho * ln(1/delta))
/// Throws DegenerateLevel when alpha == theta.
Params derive_params(const LevelContext& ctx, double epsilon, double delta);

/// L hash tables over P-padded level members; table i keys an itemset by the
/// bits of its padded vector at the k positions of projection i.
class Index {
 public:
  using Projection = std::vector<std::uint32_t>;

  /// Draws L projections of k positions each (with replacement) from the
  /// padded universe, then inserts every member.
  static Index build(std::span<const ItemsetRecord> level, const Params& params,
                     const LevelContext& ctx, std::uint64_t seed, unsigned workers = 1);

  /// Same, with caller-supplied projections.
  static Index build_with_projections(std::span<const ItemsetRecord> level, const Params& params,
                                      const LevelContext& ctx,
                                      std::vector<Projection> projections,
                                      unsigned workers = 1);

  const Params& params() const { return params_; }
  const LevelContext& context() const { return ctx_; }
  std::span<const Projection> projections() const { return projections_; }

  /// Bucket key of a vector under projection `table`.
  BitVector key(const BitVector& v, std::size_t weight, PadRole role, std::size_t table) const;

  /// Level indices stored under `key` in `table`, in insertion order.
  std::span<const std::uint32_t> bucket(std::size_t table, const BitVector& key) const;

  /// Number of buckets in `table`.
  std::size_t bucket_count(std::size_t table) const { return tables_[table].size(); }

  /// Distinct real (non-padding) positions over all projections: the number
  /// of transactions one hash evaluation reads.
  std::size_t real_positions_read() const { return real_positions_; }

 private:
  using Table = std::unordered_map<BitVector, std::vector<std::uint32_t>, BitVectorHash>;

  Params params_;
  LevelContext ctx_;
  std::vector<Projection> projections_;
  std::vector<Table> tables_;
  std::size_t real_positions_ = 0;
};

struct QueryOptions {
  bool early_exit = true;
};

/// FI_q for a member `q` of the indexed level: probes the L buckets of Q(q),
/// skips self and incompatible hits, and verifies the rest against the
/// database. With early exit, stops after `early_exit_budget` inspections if
/// none was similar.
QueryResult query(const Index& index, std::span<const ItemsetRecord> level,
                  const ItemsetRecord& q, QueryOptions options = {});

}  // namespace lshmine::hamming
