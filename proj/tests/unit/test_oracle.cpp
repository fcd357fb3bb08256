#include <gtest/gtest.h>

#include "bnndep/errors.hpp"
#include "bnndep/oracle.hpp"

using namespace bnndep;

TEST(Enumeration, ToyNetExactValues) {
  const DiscreteNetSpec toy = DiscreteNetSpec::toy_net();
  // 8 sign patterns; joint 5/8, marginals 3/4 at the origin
  EXPECT_EQ(enumerate_exact_delta(toy, 2, {0, 1}, 0.0, 0.0), Rational(1, 16));
  EXPECT_EQ(enumerate_exact_delta(toy, 2, {0, 1}, 0.5, 0.5), Rational(1, 16));
  EXPECT_EQ(enumerate_exact_delta(toy, 2, {0, 1}, 0.5, -0.5), Rational(-1, 16));
  EXPECT_EQ(enumerate_exact_delta(toy, 2, {0, 1}, 1.5, 0.0), Rational(0));
}

TEST(Enumeration, RelabelingUnitsSwapsThresholds) {
  DiscreteNetSpec spec;
  spec.widths = {2, 2, 3};
  spec.input = {1.0, -0.5};
  for (double z1 : {-0.5, 0.0, 0.75}) {
    for (double z2 : {-1.0, 0.25}) {
      EXPECT_EQ(enumerate_exact_delta(spec, 2, {0, 2}, z1, z2), enumerate_exact_delta(spec, 2, {2, 0}, z2, z1));
    }
  }
}

TEST(Enumeration, SignSymmetryLinksTails) {
  // Rademacher last-layer weights make (u, v) and (-u, -v) equal in law.
  DiscreteNetSpec spec;
  spec.widths = {1, 3, 2};
  spec.input = {1.0};
  for (double z : {-1.0, 0.0, 1.0}) {
    EXPECT_EQ(enumerate_exact_delta(spec, 2, {0, 1}, z, 0.5, Tail::kLower),
              enumerate_exact_delta(spec, 2, {0, 1}, -z, -0.5, Tail::kUpper));
  }
}

TEST(Enumeration, FirstLayerAndIdentityChainsAreIndependent) {
  DiscreteNetSpec spec;
  spec.widths = {2, 3};
  spec.input = {1.0, 2.0};
  EXPECT_EQ(enumerate_exact_delta(spec, 1, {0, 1}, 0.0, 1.0), Rational(0));
  // identity: u = w v1, v = w v2 with independent signs, so u and v are independent
  DiscreteNetSpec lin = DiscreteNetSpec::toy_net();
  lin.activation = ActivationKind::identity();
  EXPECT_EQ(enumerate_exact_delta(lin, 2, {0, 1}, 0.0, 0.0), Rational(0));
  EXPECT_EQ(enumerate_exact_delta(lin, 2, {0, 1}, 0.5, -0.5), Rational(0));
}

TEST(Enumeration, WeightedSupport) {
  // P(w = 1) = 3/4 everywhere. h1 = 1 w.p. 3/4, else 0; u, v >= 0 unless h1 = 1 and the sign is -1:
  // joint 1/4 + 3/4 (3/4)^2 = 43/64, marginals 13/16, Delta = 43/64 - 169/256 = 3/256
  DiscreteNetSpec spec = DiscreteNetSpec::toy_net();
  spec.support = {{-1.0, 1.0}, {1, 3}};
  EXPECT_EQ(enumerate_exact_delta(spec, 2, {0, 1}, 0.0, 0.0), Rational(3, 256));
}

TEST(Enumeration, RejectsOversizedNets) {
  DiscreteNetSpec spec;
  spec.widths = {3, 4, 4};  // 12 + 16 weights
  spec.input.assign(3, 1.0);
  EXPECT_THROW(enumerate_exact_delta(spec, 2, {0, 1}, 0.0, 0.0), ConfigError);
  // layers above the tapped one do not count
  EXPECT_NO_THROW(enumerate_exact_delta(spec, 1, {0, 1}, 0.0, 0.0));
  DiscreteNetSpec bad = DiscreteNetSpec::toy_net();
  bad.input = {1.0, 2.0};
  EXPECT_THROW(enumerate_exact_delta(bad, 2, {0, 1}, 0.0, 0.0), std::invalid_argument);
}

TEST(Enumeration, ThreadCountDoesNotMatter) {
  DiscreteNetSpec spec;
  spec.widths = {2, 3, 2};
  spec.input = {0.5, -1.0};
  spec.activation = ActivationKind::tanh();
  EXPECT_EQ(enumerate_exact_delta(spec, 2, {0, 1}, 0.1, 0.2, Tail::kUpper, 1),
            enumerate_exact_delta(spec, 2, {0, 1}, 0.1, 0.2, Tail::kUpper, 3));
}

TEST(Analytic, DeltaAtOrigin) {
  EXPECT_EQ(analytic_delta_zero(ActivationKind::relu(), 2), 3.0 / 64.0);
  EXPECT_EQ(analytic_delta_zero(ActivationKind::relu(), 5), 31.0 / 4096.0);
  EXPECT_EQ(analytic_delta_zero(ActivationKind::relu(), 10), 1023.0 / 4194304.0);
  EXPECT_THROW(analytic_delta_zero(ActivationKind::tanh(), 2), ConfigError);
  EXPECT_THROW(analytic_delta_zero(ActivationKind::relu(), 0), ConfigError);
}

TEST(Analytic, DeltaAlongAxis) {
  const double half = 2.0 * 3.0 / 64.0;
  EXPECT_DOUBLE_EQ(analytic_delta_zero_z(ActivationKind::relu(), 2, 0.7, 0.2), -half * 0.2);
  EXPECT_DOUBLE_EQ(analytic_delta_zero_z(ActivationKind::relu(), 2, -0.7, 0.8), half * 0.2);
  EXPECT_DOUBLE_EQ(analytic_delta_zero_z(ActivationKind::relu(), 2, 0.0, 0.5), 3.0 / 64.0);
}

TEST(BruteForceTau, ByHand) {
  EXPECT_EQ(brute_force_tau(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 1.0 / 3.0);
  EXPECT_EQ(brute_force_tau(std::vector<double>{1, 2, 2, 3, 4}, std::vector<double>{2, 1, 3, 3, 5}), 0.6);
}

TEST(DiscreteSampler, MonteCarloMatchesEnumeration) {
  const DiscreteNetSpec toy = DiscreteNetSpec::toy_net();
  const SampleBatch b = sample_discrete_units(toy, 2, {0, 1}, 40000, SeedSpec(3));
  for (const auto& [z1, z2] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {0.5, -0.5}}) {
    const auto est = delta_upper(b, z1, z2);
    const double exact = boost::rational_cast<double>(enumerate_exact_delta(toy, 2, {0, 1}, z1, z2));
    EXPECT_NEAR(est.value, exact, 4.0 * est.std_error);
  }
  EXPECT_EQ(b.u, sample_discrete_units(toy, 2, {0, 1}, 40000, SeedSpec(3), 2).u);
}
