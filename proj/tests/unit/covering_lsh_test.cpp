#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "lshmine/covering_lsh.hpp"
#include "lshmine/error.hpp"
#include "test_support.hpp"

namespace lshmine::covering {
namespace {

using testing::record;

TEST(CoveringParams, ReferenceValues) {
  const auto p = derive_params({20, 100, 12, 10}, 0.5, 0.1);
  EXPECT_EQ(p.theta_prime, 4u);
  EXPECT_EQ(p.n_prime, 44u);
  EXPECT_EQ(p.t, 1u);
  EXPECT_NEAR(p.eps_round, 1.0 - std::log(100.0) / 14.0, 1e-12);
  EXPECT_NEAR(p.eps_round, 0.67106, 1e-5);
  EXPECT_NEAR(p.c, 3.5, 1e-12);
  EXPECT_NEAR(p.nu, 0.47745, 1e-5);
  EXPECT_EQ(p.mask_dim, 5u);
  EXPECT_NEAR(p.psi_bound, 47.9175, 1e-3);
  EXPECT_EQ(p.early_exit_budget, 480u);
  EXPECT_EQ(Family::build(p, 1).mask_count(), 31u);
}

TEST(CoveringParams, SingleItemsetLevelStillHasOneRound) {
  const auto p = derive_params({20, 1, 12, 10}, 0.5, 0.1);
  EXPECT_EQ(p.t, 1u);
  EXPECT_NEAR(p.eps_round, 1.0, 1e-12);
}

TEST(CoveringParams, RoundsGrowWithLevelSize) {
  // raw t = ln(m) / (2 (alpha - (1-eps) theta) n) = ln(1000) / 3 here.
  const auto p = derive_params({10, 1000, 2, 1}, 0.5, 0.1);
  EXPECT_EQ(p.t, 3u);
  EXPECT_EQ(p.mask_dim, p.t * p.theta_prime + 1);
  EXPECT_GT(p.c, 1.0);
}

TEST(CoveringParams, DegenerateAndOversized) {
  EXPECT_THROW(derive_params({20, 10, 10, 10}, 0.5, 0.1), DegenerateLevel);
  try {
    derive_params({100, 10, 80, 50}, 0.2, 0.1);
    FAIL() << "expected FamilyTooLarge";
  } catch (const FamilyTooLarge& e) {
    EXPECT_NE(std::string(e.what()).find("covering family too large"), std::string::npos);
  }
  EXPECT_NO_THROW(derive_params({20, 10, 12, 10}, 0.5, 0.1, 5));
  EXPECT_THROW(derive_params({20, 10, 12, 10}, 0.5, 0.1, 4), FamilyTooLarge);
}

TEST(CoveringFamily, SingleDimension) {
  const auto f = Family::from_phi({1, 0, 1, 1}, 1);
  ASSERT_EQ(f.mask_count(), 1u);
  EXPECT_EQ(f.mask(0).to_string(), "1011");
}

TEST(CoveringFamily, MasksAreLinearInV) {
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto f = Family::build(30, d, 100 + d);
    const std::uint64_t count = (std::uint64_t{1} << d) - 1;
    ASSERT_EQ(f.mask_count(), count);
    for (std::uint64_t v1 = 1; v1 <= count; ++v1) {
      for (std::uint64_t v2 = v1 + 1; v2 <= count; ++v2) {
        const auto v3 = v1 ^ v2;
        EXPECT_EQ(f.mask(v1 - 1) ^ f.mask(v2 - 1), f.mask(v3 - 1));
      }
    }
  }
}

TEST(CoveringFamily, MaskBitsAreParities) {
  const auto f = Family::build(20, 4, 3);
  for (std::size_t j = 0; j < f.mask_count(); ++j) {
    for (std::size_t i = 0; i < 20; ++i) {
      EXPECT_EQ(f.mask(j).test(i), std::popcount(f.phi()[i] & (j + 1)) % 2 == 1);
    }
  }
}

TEST(CoveringFamily, ZeroPhiGivesZeroMasks) {
  const auto f = Family::from_phi(std::vector<std::uint64_t>(12, 0), 3);
  for (std::size_t j = 0; j < f.mask_count(); ++j) EXPECT_TRUE(f.mask(j).none());
  EXPECT_EQ(f.real_positions_read(8), 0u);
}

TEST(CoveringFamily, SeedDeterminesFamily) {
  const auto a = Family::build(40, 6, 5);
  const auto b = Family::build(40, 6, 5);
  EXPECT_TRUE(std::ranges::equal(a.phi(), b.phi()));
}

TEST(VerifyCovering, TrivialSets) {
  const auto f = Family::build(10, 3, 1);
  EXPECT_TRUE(verify_covering(f, {}));
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t pos[] = {i};
    EXPECT_TRUE(verify_covering(f, pos));
  }
  const std::size_t bad[] = {10};
  EXPECT_THROW(verify_covering(f, bad), Error);
}

TEST(VerifyCovering, DetectsFullRank) {
  // phi = unit vectors: three positions span everything.
  const auto f = Family::from_phi({1, 2, 4, 3}, 3);
  const std::size_t full[] = {0, 1, 2};
  const std::size_t dependent[] = {0, 1, 3};
  EXPECT_FALSE(verify_covering(f, full));
  EXPECT_TRUE(verify_covering(f, dependent));
}

TEST(CoveringIndex, ZeroMaskSharesOneBucket) {
  const std::vector<ItemsetRecord> level{record({0}, BitVector::from_string("1100")),
                                         record({1}, BitVector::from_string("0011")),
                                         record({2}, BitVector::from_string("1010"))};
  const auto ctx = make_level_context(level, 4, 1);
  const auto zero = Family::from_phi(std::vector<std::uint64_t>(ctx.padded_length(), 0), 1);
  const auto index = Index::build(level, zero, ctx);
  EXPECT_EQ(index.bucket_count(0), 1u);
  const auto probe = pad_query(level[0].vector, ctx).bits;
  EXPECT_EQ(index.bucket(zero, 0, probe).size(), 3u);

  const auto ones = Family::from_phi(std::vector<std::uint64_t>(ctx.padded_length(), 1), 1);
  EXPECT_EQ(Index::build(level, ones, ctx).bucket_count(0), 3u);
}

// Random levels: every pair within the covering radius shares a bucket, and
// query returns every frequent compatible partner.
TEST(CoveringQuery, NoMissesOnRandomLevels) {
  std::mt19937_64 rng(21);
  std::size_t levels_checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 8 + rng() % 17;
    const std::size_t m_l = 2 + rng() % 39;
    std::vector<ItemsetRecord> level;
    for (ItemId i = 0; i < m_l; ++i) {
      BitVector v(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (rng() % 2) v.set(j);
      }
      level.push_back(record({0, i + 1}, std::move(v)));
    }
    std::size_t lo = n, hi = 0;
    for (const auto& r : level) {
      lo = std::min(lo, r.support);
      hi = std::max(hi, r.support);
    }
    if (lo == 0 || lo == hi) continue;
    const LevelContext ctx = make_level_context(level, n, lo);
    Params params;
    try {
      params = derive_params(ctx, 0.5, 0.1, 12);
    } catch (const FamilyTooLarge&) {
      continue;
    }
    ++levels_checked;
    const auto family = Family::build(params, rng());
    const auto index = Index::build(level, family, ctx);
    for (std::size_t q = 0; q < level.size(); ++q) {
      const auto got = query(index, family, level, level[q]);
      for (std::size_t a = 0; a < level.size(); ++a) {
        if (a == q || co_support(level[a].vector, level[q].vector) < ctx.theta_count) continue;
        EXPECT_NE(std::ranges::find(got.partners, a), got.partners.end())
            << "trial " << trial << " q " << q << " a " << a;
      }
      for (auto a : got.partners) {
        EXPECT_GE(co_support(level[a].vector, level[q].vector), ctx.theta_count);
      }
    }
  }
  EXPECT_GE(levels_checked, 40u);
}

TEST(CoveringQuery, DisjointLevelVerifiesNothing) {
  std::vector<ItemsetRecord> level;
  for (ItemId i = 0; i < 5; ++i) {
    level.push_back(record({i}, testing::bits(15, {3 * i, 3 * i + 1, 3 * i + 2})));
  }
  level[0].vector.set(14);
  level[0].support = 4;
  const auto ctx = make_level_context(level, 15, 3);
  const auto params = derive_params(ctx, 0.5, 0.1);
  const auto family = Family::build(params, 4);
  const auto index = Index::build(level, family, ctx, 3);
  for (const auto& q : level) EXPECT_TRUE(query(index, family, level, q).partners.empty());
}

TEST(CoveringQuery, EarlyExitOnlyWhenEnabled) {
  std::vector<ItemsetRecord> level;
  level.push_back(record({0, 1}, testing::bits(12, {0, 1, 2})));
  for (ItemId i = 2; i < 20; ++i) level.push_back(record({0, i}, testing::bits(12, {3, 4})));
  const auto ctx = make_level_context(level, 12, 2);
  const auto params = derive_params(ctx, 0.5, 0.1);
  const auto family = Family::build(params, 8);
  const auto index = Index::build(level, family, ctx);
  const auto off = query(index, family, level, level[0]);
  EXPECT_FALSE(off.early_exit);
  const auto on = query(index, family, level, level[0], {true, 2});
  EXPECT_LE(on.inspected.size(), 2u);
}

}  // namespace
}  // namespace lshmine::covering
