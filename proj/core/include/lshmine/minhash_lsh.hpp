#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lshmine/bit_vector.hpp"
#include "lshmine/dataset.hpp"
#include "lshmine/transform.hpp"

namespace lshmine::minhash {

struct Params {
  double omega = 0.0;             // Jaccard of a (1-eps)theta-infrequent pair
  double eps_mh = 0.0;            // estimation tolerance
  std::size_t lambda = 0;         // sketch rows
  double accept_threshold = 0.0;  // (1 - eps_mh) theta / (2 alpha - theta)
};

/// Largest sketch accepted by derive_params.
inline constexpr std::size_t kMaxLambda = 10'000'000;

/// omega  = (1-eps) theta / (2 alpha - (1-eps) theta)
/// eps_mh = alpha eps / (alpha + (alpha - theta)(1 - eps))
/// lambda = ceil(2 / (omega eps_mh^2) * ln(1/delta))
/// Throws "tolerance too small" when lambda would exceed kMaxLambda.
Params derive_params(const LevelContext& ctx, double epsilon, double delta);

/// Minwise summary of the P-padded level: lambda independent uniform
/// permutations of the padded universe, and for every member the argmin
/// position of its padded support under each permutation.
class Sketch {
 public:
  static Sketch build(std::span<const ItemsetRecord> level, const Params& params,
                      const LevelContext& ctx, std::uint64_t seed, unsigned workers = 1);

  /// Same, with caller-supplied permutations given as position -> rank
  /// tables; `params.lambda` is taken from their count.
  static Sketch build_with_ranks(std::span<const ItemsetRecord> level, Params params,
                                 const LevelContext& ctx,
                                 std::span<const std::vector<std::uint32_t>> ranks,
                                 unsigned workers = 1);

  const Params& params() const { return params_; }
  const LevelContext& context() const { return ctx_; }
  std::size_t rows() const { return params_.lambda; }
  std::size_t universe() const { return universe_; }
  std::size_t size() const { return members_; }

  /// Row values of level member `a`.
  std::span<const std::uint32_t> column(std::size_t a) const;

  /// Row values of an arbitrary vector padded with `role`; `weight` must be
  /// popcount(v).
  std::vector<std::uint32_t> sketch(const BitVector& v, std::size_t weight, PadRole role) const;

  /// Rank of every padded position under permutation `row`.
  std::span<const std::uint32_t> ranks(std::size_t row) const;

 private:
  Params params_;
  LevelContext ctx_;
  std::size_t universe_ = 0;
  std::size_t members_ = 0;
  std::vector<std::uint32_t> ranks_;    // lambda x universe
  std::vector<std::uint32_t> columns_;  // members x lambda

  void fill_columns(std::span<const ItemsetRecord> level, unsigned workers);
};

/// Fraction of rows where the two columns agree.
double estimate_js(std::span<const std::uint32_t> a, std::span<const std::uint32_t> q);

/// FI_q: compatible members (self excluded) whose estimated Jaccard with Q(q)
/// reaches the accept threshold. Reads no transactions.
std::vector<std::size_t> query(const Sketch& sketch, std::span<const ItemsetRecord> level,
                               const ItemsetRecord& q);

}  // namespace lshmine::minhash
