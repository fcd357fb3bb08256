#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "bnndep/errors.hpp"
#include "bnndep/experiments.hpp"
#include "bnndep/sampler.hpp"

using namespace bnndep;

namespace {

double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

std::vector<double> row(const Matrix& m, Eigen::Index r) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(j)] = m(r, j);
  return out;
}

}  // namespace

TEST(Seeds, ChildrenAreDistinctAndStable) {
  const SeedSpec root(42);
  std::set<std::uint64_t> keys;
  for (std::uint64_t i = 0; i < 1000; ++i) keys.insert(root.child(i).key());
  keys.insert(root.child("weights").key());
  keys.insert(root.child("input").key());
  EXPECT_EQ(keys.size(), 1002u);
  EXPECT_EQ(root.child("a").child(3), SeedSpec(42).child("a").child(3));
  EXPECT_NE(SeedSpec(42).child("a").key(), SeedSpec(43).child("a").key());
}

TEST(Seeds, RngIsReproducibleAndUniformInRange) {
  Rng a{SeedSpec(7)}, b{SeedSpec(7)};
  double sum = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = a.uniform();
    ASSERT_EQ(u, b.uniform());
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kDraws, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / kDraws));
}

TEST(Input, StandardGaussianMoments) {
  constexpr std::size_t kDim = 200000;
  const Vector x = generate_input(kDim, SeedSpec(5));
  const std::vector<double> v(x.data(), x.data() + x.size());
  EXPECT_NEAR(mean(v), 0.0, 4.0 / std::sqrt(kDim));
  EXPECT_NEAR(variance(v), 1.0, 4.0 * std::sqrt(2.0 / kDim));
  EXPECT_EQ(generate_input(10, SeedSpec(5)), generate_input(10, SeedSpec(5)));
}

TEST(WeightMatrix, GaussianIidMoments) {
  Rng rng{SeedSpec(1)};
  const Matrix w = sample_weight_matrix(PriorSpec::gaussian_iid(2.0, ScaleMode::kFixed), 20, 10000, rng);
  const std::vector<double> v(w.data(), w.data() + w.size());
  const double n = static_cast<double>(v.size());
  EXPECT_NEAR(mean(v), 0.0, 4.0 * 2.0 / std::sqrt(n));
  EXPECT_NEAR(variance(v), 4.0, 4.0 * 4.0 * std::sqrt(2.0 / n));
  // rows are uncorrelated
  const auto r0 = row(w, 0), r1 = row(w, 1);
  double c = 0.0;
  for (std::size_t j = 0; j < r0.size(); ++j) c += r0[j] * r1[j];
  EXPECT_NEAR(c / static_cast<double>(r0.size()) / 4.0, 0.0, 4.0 / std::sqrt(static_cast<double>(r0.size())));
}

TEST(WeightMatrix, EquicorrelatedWithinColumn) {
  Rng rng{SeedSpec(2)};
  constexpr Eigen::Index kCols = 100000;
  const Matrix w = sample_weight_matrix(PriorSpec::gaussian_equicorrelated(0.5, 1.0, ScaleMode::kFixed), 4, kCols, rng);
  for (Eigen::Index a = 0; a < 4; ++a) {
    EXPECT_NEAR(variance(row(w, a)), 1.0, 0.02);
    for (Eigen::Index b = a + 1; b < 4; ++b) {
      const auto ra = row(w, a), rb = row(w, b);
      double c = 0.0;
      for (std::size_t j = 0; j < ra.size(); ++j) c += ra[j] * rb[j];
      EXPECT_NEAR(c / kCols, 0.5, 0.015) << a << "," << b;
    }
  }
  // columns stay independent
  double c = 0.0;
  for (Eigen::Index j = 0; j + 1 < kCols; j += 2) c += w(0, j) * w(0, j + 1);
  EXPECT_NEAR(c / (kCols / 2), 0.0, 4.0 / std::sqrt(kCols / 2.0));
}

TEST(WeightMatrix, StudentTVarianceAndSharedMixing) {
  Rng rng{SeedSpec(3)};
  constexpr Eigen::Index kCols = 200000;
  const Matrix w = sample_weight_matrix(PriorSpec::student_t(5.0, 1.0, ScaleMode::kFixed), 2, kCols, rng);
  EXPECT_NEAR(variance(row(w, 0)), 5.0 / 3.0, 0.06);
  // one mixing variable per column: entries uncorrelated but |w| positively dependent
  double c = 0.0, c2 = 0.0;
  for (Eigen::Index j = 0; j < kCols; ++j) {
    c += w(0, j) * w(1, j);
    c2 += w(0, j) * w(0, j) * w(1, j) * w(1, j);
  }
  EXPECT_NEAR(c / kCols, 0.0, 0.03);
  const double v = 5.0 / 3.0;
  // E[w0^2 w1^2] = nu^2 / ((nu - 2)(nu - 4)) = 25 / 3 > v^2
  EXPECT_GT(c2 / kCols, 1.5 * v * v);
}

class SamplerTest : public ::testing::Test {
 protected:
  NetworkConfig config = make_uniform_config(3, 4, 20, ActivationKind::relu(), PriorSpec::gaussian_iid());
  Vector input = generate_input(20, SeedSpec(11));
  SeedSpec seed = SeedSpec(11).child("test");
};

TEST_F(SamplerTest, ThreadCountDoesNotChangeResults) {
  const SampleBatch one = sample_units(config, input, 3, {0, 1}, Tap::kPreActivation, 3001, seed, true, 1);
  const SampleBatch three = sample_units(config, input, 3, {0, 1}, Tap::kPreActivation, 3001, seed, true, 3);
  EXPECT_EQ(one.u, three.u);
  EXPECT_EQ(one.v, three.v);
  EXPECT_EQ(*one.prev_norms, *three.prev_norms);
  const Matrix m1 = sample_layer(config, input, 2, Tap::kPostActivation, 1000, seed, 1);
  const Matrix m4 = sample_layer(config, input, 2, Tap::kPostActivation, 1000, seed, 4);
  EXPECT_EQ(m1, m4);
}

TEST_F(SamplerTest, SwappingUnitsSwapsCoordinates) {
  const SampleBatch ab = sample_units(config, input, 2, {0, 1}, Tap::kPreActivation, 500, seed);
  const SampleBatch ba = sample_units(config, input, 2, {1, 0}, Tap::kPreActivation, 500, seed);
  EXPECT_EQ(ab.u, ba.v);
  EXPECT_EQ(ab.v, ba.u);
}

TEST_F(SamplerTest, LayerSamplesAgreeWithUnitSamples) {
  const SampleBatch b = sample_units(config, input, 2, {1, 3}, Tap::kPostActivation, 300, seed);
  const Matrix m = sample_layer(config, input, 2, Tap::kPostActivation, 300, seed);
  ASSERT_EQ(m.rows(), 300);
  ASSERT_EQ(m.cols(), 4);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    EXPECT_EQ(m(i, 1), b.u[static_cast<std::size_t>(i)]);
    EXPECT_EQ(m(i, 3), b.v[static_cast<std::size_t>(i)]);
  }
}

TEST_F(SamplerTest, PostTapIsActivationOfPreTap) {
  const SampleBatch pre = sample_units(config, input, 2, {0, 1}, Tap::kPreActivation, 200, seed);
  const SampleBatch post = sample_units(config, input, 2, {0, 1}, Tap::kPostActivation, 200, seed);
  for (std::size_t i = 0; i < pre.size(); ++i) EXPECT_EQ(post.u[i], std::max(pre.u[i], 0.0));
}

TEST_F(SamplerTest, NormsMatchPreviousLayer) {
  const SampleBatch b = sample_units(config, input, 2, {0, 1}, Tap::kPreActivation, 200, seed, true);
  const Matrix h1 = sample_layer(config, input, 1, Tap::kPostActivation, 200, seed);
  for (Eigen::Index i = 0; i < h1.rows(); ++i) {
    const Vector h = h1.row(i).transpose();
    const double expected = config.prior(2).sigma_norm(std::span<const double>(h.data(), static_cast<std::size_t>(h.size())));
    EXPECT_NEAR((*b.prev_norms)[static_cast<std::size_t>(i)], expected, 1e-12 * (1.0 + expected));
  }
}

TEST_F(SamplerTest, RejectsBadRequests) {
  EXPECT_THROW(sample_units(config, input, 1, {0, 1}, Tap::kPreActivation, 10, seed, true), ConfigError);
  EXPECT_THROW(sample_units(config, input, 2, {0, 0}, Tap::kPreActivation, 10, seed), DimensionError);
  EXPECT_THROW(sample_units(config, input, 2, {0, 4}, Tap::kPreActivation, 10, seed), DimensionError);
  EXPECT_THROW(sample_units(config, input, 4, {0, 1}, Tap::kPreActivation, 10, seed), DimensionError);
  EXPECT_THROW(sample_units(config, Vector::Ones(3), 2, {0, 1}, Tap::kPreActivation, 10, seed), DimensionError);
}

TEST_F(SamplerTest, ReplicasShareFirstCopyWithUnitSampler) {
  const SampleBatch single = sample_units(config, input, 2, {0, 1}, Tap::kPreActivation, 20000, seed);
  const ReplicaBatch rep = sample_replicas(config, input, 2, {0, 1}, Tap::kPreActivation, 20000, seed);
  EXPECT_EQ(rep.u1, single.u);
  EXPECT_EQ(rep.v1, single.v);
  EXPECT_NE(rep.u2, rep.u1);
  // same marginal law for the second copy
  const double n = 20000.0;
  const double sd = std::sqrt(variance(rep.u1));
  EXPECT_NEAR(mean(rep.u2), mean(rep.u1), 4.0 * std::sqrt(2.0) * sd / std::sqrt(n));
  EXPECT_NEAR(variance(rep.u2) / variance(rep.u1), 1.0, 0.06);
}

TEST(Sampler, PreActivationVarianceOfFirstLayer) {
  // g1_j = W_j^T x with W_j ~ N(0, sigma0^2 / H0 I): Var = sigma0^2 ||x||^2 / H0
  const std::size_t dim = 50;
  const Vector x = generate_input(dim, SeedSpec(9));
  const NetworkConfig c = make_uniform_config(1, 2, dim, ActivationKind::relu(), PriorSpec::gaussian_iid(3.0));
  const SampleBatch b = sample_units(c, x, 1, {0, 1}, Tap::kPreActivation, 40000, SeedSpec(9));
  const double expected = 9.0 * x.squaredNorm() / static_cast<double>(dim);
  EXPECT_NEAR(variance(b.u) / expected, 1.0, 4.0 * std::sqrt(2.0 / 40000));
}
