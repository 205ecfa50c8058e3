#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lshmine/bit_vector.hpp"
#include "lshmine/dataset.hpp"
#include "lshmine/query_result.hpp"
#include "lshmine/transform.hpp"

namespace lshmine::covering {

inline constexpr std::size_t kDefaultMaskDimCap = 24;
inline constexpr std::size_t kMaxMaskDim = 63;
/// Upper bound on the materialized family plus index for one level.
inline constexpr std::size_t kMaxIndexBytes = std::size_t{1} << 30;

struct Params {
  std::size_t n_prime = 0;      // padded dimension n + 2 alpha_count
  std::size_t theta_prime = 0;  // covering radius 2 (alpha_count - theta_count)
  std::size_t t = 0;
  double c = 0.0;          // (alpha - (1-eps) theta) / (alpha - theta)
  double eps_round = 0.0;  // t - raw t
  double nu = 0.0;         // (t + eps_round) / (c t)
  std::size_t mask_dim = 0;  // t * theta_prime + 1
  double psi_bound = 0.0;    // 2^(theta_prime * eps_round + 1) * m_l^(1/c)
  std::size_t early_exit_budget = 0;  // ceil(psi_bound / delta)
};

/// Approximate bytes held by a Family and Index of this shape.
std::size_t estimated_index_bytes(std::size_t mask_dim, std::size_t n_prime, std::size_t m_l);

/// Throws DegenerateLevel when alpha == theta and FamilyTooLarge when
/// mask_dim exceeds `mask_dim_cap` or the index would exceed kMaxIndexBytes.
Params derive_params(const LevelContext& ctx, double epsilon, double delta,
                     std::size_t mask_dim_cap = kDefaultMaskDimCap);

/// The masks a(v), v != 0, with a(v)_i = <phi(i), v> over GF(2), where phi
/// maps each padded position to a random mask_dim-bit vector.
class Family {
 public:
  static Family build(const Params& params, std::uint64_t seed);
  static Family build(std::size_t n_prime, std::size_t mask_dim, std::uint64_t seed);
  /// Family from an explicit phi (one mask_dim-bit word per position).
  static Family from_phi(std::vector<std::uint64_t> phi, std::size_t mask_dim);

  std::size_t n_prime() const { return phi_.size(); }
  std::size_t mask_dim() const { return mask_dim_; }
  std::size_t mask_count() const { return masks_.size(); }
  std::span<const std::uint64_t> phi() const { return phi_; }

  /// Mask for v = j + 1.
  const BitVector& mask(std::size_t j) const { return masks_[j]; }

  /// Real positions (< n) that some mask selects, i.e. phi(i) != 0.
  std::size_t real_positions_read(std::size_t n) const;

 private:
  std::size_t mask_dim_ = 0;
  std::vector<std::uint64_t> phi_;
  std::vector<BitVector> masks_;
};

/// True iff some v != 0 is orthogonal to phi(i) for every given position,
/// i.e. some mask zeroes all of them. Always true for at most mask_dim - 1
/// positions.
bool verify_covering(const Family& family, std::span<const std::size_t> positions);

/// One table per mask over the P-padded level members, keyed by P(a) AND mask.
class Index {
 public:
  static Index build(std::span<const ItemsetRecord> level, const Family& family,
                     const LevelContext& ctx, unsigned workers = 1);

  const LevelContext& context() const { return ctx_; }
  std::size_t table_count() const { return tables_.size(); }

  /// Level members colliding with `padded_query` under mask j, ascending.
  std::vector<std::uint32_t> bucket(const Family& family, std::size_t j,
                                    const BitVector& padded_query) const;

  /// Number of distinct keys under mask j.
  std::size_t bucket_count(std::size_t j) const;

 private:
  using Entry = std::pair<std::uint64_t, std::uint32_t>;  // (key hash, member)

  LevelContext ctx_;
  std::vector<BitVector> padded_;
  std::vector<std::vector<Entry>> tables_;
};

struct QueryOptions {
  bool early_exit = false;
  std::size_t early_exit_budget = 0;
};

/// FI_q for member `q`: every member colliding with Q(q) under some mask is
/// checked for compatibility and verified against the database.
QueryResult query(const Index& index, const Family& family, std::span<const ItemsetRecord> level,
                  const ItemsetRecord& q, QueryOptions options = {});

}  // namespace lshmine::covering
