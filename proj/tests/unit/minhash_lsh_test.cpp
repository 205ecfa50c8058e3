#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lshmine/error.hpp"
#include "lshmine/minhash_lsh.hpp"
#include "test_support.hpp"

namespace lshmine::minhash {
namespace {

using testing::record;

TEST(MinhashParams, ReferenceValues) {
  const auto p = derive_params({100, 10, 80, 50}, 0.2, 0.1);
  EXPECT_NEAR(p.omega, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.eps_mh, 2.0 / 13.0, 1e-12);
  EXPECT_EQ(p.lambda, 584u);
  EXPECT_NEAR(p.accept_threshold, 5.0 / 13.0, 1e-12);
}

TEST(MinhashParams, LambdaIndependentOfLevelSize) {
  EXPECT_EQ(derive_params({100, 3, 80, 50}, 0.2, 0.1).lambda,
            derive_params({100, 3000, 80, 50}, 0.2, 0.1).lambda);
}

TEST(MinhashParams, TinyToleranceIsRejected) {
  try {
    derive_params({100, 10, 80, 50}, 1e-6, 0.1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("tolerance too small"), std::string::npos);
  }
}

TEST(MinhashParams, DegenerateLevelKeepsTolerance) {
  const auto p = derive_params({100, 10, 50, 50}, 0.3, 0.1);
  EXPECT_NEAR(p.eps_mh, 0.3, 1e-12);
}

TEST(MinhashParams, SeparationHoldsOnGrid) {
  for (std::size_t alpha = 10; alpha <= 100; alpha += 9) {
    for (std::size_t theta = 1; theta <= alpha; theta += 7) {
      for (double eps : {0.05, 0.2, 0.5, 0.8, 0.95}) {
        const auto p = derive_params({100, 5, alpha, theta}, eps, 0.1);
        EXPECT_GE(p.accept_threshold, (1 + p.eps_mh) * p.omega - 1e-12)
            << alpha << ' ' << theta << ' ' << eps;
      }
    }
  }
}

LevelContext ctx4() { return {4, 2, 3, 1}; }

std::vector<ItemsetRecord> pair_level() {
  return {record({0, 1}, BitVector::from_string("1100")),
          record({0, 2}, BitVector::from_string("0110"))};
}

// Argmin of a position set under a rank table, computed without the library.
std::size_t argmin(const std::vector<std::size_t>& positions, const std::vector<std::uint32_t>& rank) {
  return *std::min_element(positions.begin(), positions.end(),
                           [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
}

TEST(MinhashSketch, CollisionRateEqualsJaccardExhaustively) {
  const auto ctx = ctx4();
  const auto p = pad_preprocess(BitVector::from_string("1100"), ctx).bits.ones();
  const auto q = pad_query(BitVector::from_string("0110"), ctx).bits.ones();
  std::vector<std::uint32_t> rank(ctx.padded_length());
  std::iota(rank.begin(), rank.end(), 0U);
  std::uint64_t total = 0, equal = 0;
  do {
    ++total;
    equal += argmin(p, rank) == argmin(q, rank);
  } while (std::next_permutation(rank.begin(), rank.end()));
  EXPECT_EQ(total, 3628800u);
  EXPECT_EQ(equal * 5, total);  // Jaccard 1/5
}

TEST(MinhashSketch, RowsAreArgminsOfThePaddedSupport) {
  const auto level = pair_level();
  const auto ctx = ctx4();
  std::mt19937 rng(8);
  std::vector<std::vector<std::uint32_t>> ranks(300, std::vector<std::uint32_t>(10));
  for (auto& r : ranks) {
    std::iota(r.begin(), r.end(), 0U);
    std::shuffle(r.begin(), r.end(), rng);
  }
  Params params = derive_params({4, 2, 3, 1}, 0.5, 0.2);
  const auto sketch = Sketch::build_with_ranks(level, params, ctx, ranks);
  ASSERT_EQ(sketch.rows(), 300u);
  const auto p0 = pad_preprocess(level[0].vector, ctx).bits.ones();
  const auto q1 = pad_query(level[1].vector, ctx).bits.ones();
  const auto probe = sketch.sketch(level[1].vector, 2, PadRole::query);
  for (std::size_t r = 0; r < 300; ++r) {
    EXPECT_EQ(sketch.column(0)[r], argmin(p0, ranks[r]));
    EXPECT_EQ(probe[r], argmin(q1, ranks[r]));
  }
}

TEST(MinhashSketch, IdenticalVectorsShareColumns) {
  const std::vector<ItemsetRecord> level{record({0, 1}, BitVector::from_string("1010")),
                                         record({0, 2}, BitVector::from_string("1010"))};
  const auto sketch = Sketch::build(level, derive_params(ctx4(), 0.5, 0.2), ctx4(), 5);
  EXPECT_TRUE(std::ranges::equal(sketch.column(0), sketch.column(1)));
  EXPECT_DOUBLE_EQ(estimate_js(sketch.column(0), sketch.column(1)), 1.0);
}

TEST(MinhashSketch, SingleRowEstimateIsBinary) {
  auto params = derive_params(ctx4(), 0.5, 0.2);
  params.lambda = 1;
  const auto level = pair_level();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sketch = Sketch::build(level, params, ctx4(), seed);
    const double e = estimate_js(sketch.column(0), sketch.column(1));
    EXPECT_TRUE(e == 0.0 || e == 1.0);
  }
}

TEST(MinhashSketch, SingletonSupportPinsEveryRow) {
  // P(v) of a full-weight single bit has one set position.
  const std::vector<ItemsetRecord> level{record({0}, BitVector::from_string("0100"))};
  const LevelContext ctx{4, 1, 1, 1};
  auto params = derive_params({4, 2, 1, 1}, 0.5, 0.2);
  const auto sketch = Sketch::build(level, params, ctx, 3);
  for (auto v : sketch.column(0)) EXPECT_EQ(v, 1u);
}

TEST(MinhashSketch, EstimateIsUnbiased) {
  const auto level = pair_level();
  const auto ctx = ctx4();
  auto params = derive_params(ctx, 0.5, 0.2);
  params.lambda = 584;
  double sum = 0.0;
  const int seeds = 60;
  for (int s = 0; s < seeds; ++s) {
    const auto sketch = Sketch::build(level, params, ctx, 100 + s);
    sum += estimate_js(sketch.column(0), sketch.sketch(level[1].vector, 2, PadRole::query));
  }
  EXPECT_NEAR(sum / seeds, 0.2, 0.02);
}

TEST(MinhashSketch, DeterministicAcrossWorkers) {
  const auto level = pair_level();
  const auto params = derive_params(ctx4(), 0.3, 0.1);
  const auto a = Sketch::build(level, params, ctx4(), 77, 1);
  const auto b = Sketch::build(level, params, ctx4(), 77, 5);
  for (std::size_t i = 0; i < level.size(); ++i) {
    EXPECT_TRUE(std::ranges::equal(a.column(i), b.column(i)));
  }
}

TEST(MinhashEstimate, Extremes) {
  const std::vector<std::uint32_t> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_DOUBLE_EQ(estimate_js(a, a), 1.0);
  EXPECT_DOUBLE_EQ(estimate_js(a, b), 0.0);
  EXPECT_THROW(estimate_js(a, std::vector<std::uint32_t>{1}), Error);
}

TEST(MinhashQuery, EmptyLevelGivesNothing) {
  const auto level = pair_level();
  const auto sketch = Sketch::build(level, derive_params(ctx4(), 0.5, 0.2), ctx4(), 1);
  EXPECT_TRUE(query(sketch, {}, level[0]).empty());
}

TEST(MinhashQuery, ThresholdSeparatesPairs) {
  // n=100, alpha=80, theta=50: a frequent partner (s=50) and an infrequent
  // one (s=30).
  std::vector<std::size_t> q, hi, lo;
  for (std::size_t i = 0; i < 80; ++i) q.push_back(i);
  for (std::size_t i = 30; i < 100; ++i) hi.push_back(i);
  for (std::size_t i = 50; i < 100; ++i) lo.push_back(i);
  const std::vector<ItemsetRecord> level{record({0, 1}, testing::bits(100, q)),
                                         record({0, 2}, testing::bits(100, hi)),
                                         record({0, 3}, testing::bits(100, lo))};
  const auto ctx = make_level_context(level, 100, 50);
  const auto params = derive_params(ctx, 0.2, 0.1);
  int hi_found = 0, lo_found = 0;
  for (int s = 0; s < 40; ++s) {
    const auto sketch = Sketch::build(level, params, ctx, 500 + s);
    const auto r = query(sketch, level, level[0]);
    hi_found += std::ranges::count(r, 1u);
    lo_found += std::ranges::count(r, 2u);
  }
  EXPECT_GE(hi_found, 32);
  EXPECT_LE(lo_found, 2);
}

}  // namespace
}  // namespace lshmine::minhash
