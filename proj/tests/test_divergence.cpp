#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "infogeo/divergence.hpp"
#include "infogeo/fisher.hpp"
#include "infogeo/geometry.hpp"
#include "support/test_families.hpp"

using infogeo::DiscreteDistribution;
using infogeo::EntropyUnit;
using infogeo::ParamPoint;
using infogeo::QuadratureSpec;
using infogeo::SplitMix64;

namespace {

QuadratureSpec spec_for(const infogeo::DensityFamily& f, const ParamPoint& t) {
  return QuadratureSpec::defaults_for(f, t);
}

/// Closed form for equal-width location Gaussians: |dtheta|^2 / (2 a^2).
double gaussian_kl_closed_form(const std::vector<double>& dtheta, double a) {
  double ss = 0.0;
  for (double d : dtheta) ss += d * d;
  return ss / (2.0 * a * a);
}

DiscreteDistribution random_simplex(SplitMix64& rng, int bins) {
  std::vector<double> p(static_cast<std::size_t>(bins));
  double sum = 0.0;
  for (auto& v : p) {
    v = -std::log(rng.next_open());
    sum += v;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    p[i] /= sum;
    acc += p[i];
  }
  p.back() = 1.0 - acc;  // exact unit sum
  return DiscreteDistribution(std::move(p));
}

}  // namespace

TEST(ShannonEntropy, TextbookValues) {
  EXPECT_DOUBLE_EQ(
      infogeo::shannon_entropy(DiscreteDistribution({0.5, 0.5}), EntropyUnit::bits),
      1.0);
  EXPECT_DOUBLE_EQ(
      infogeo::shannon_entropy(DiscreteDistribution({1.0, 0.0}), EntropyUnit::bits),
      0.0);
  EXPECT_NEAR(infogeo::shannon_entropy(DiscreteDistribution({0.25, 0.75}),
                                       EntropyUnit::bits),
              0.8112781244591328, 1e-12);
  EXPECT_NEAR(infogeo::shannon_entropy(DiscreteDistribution({0.25, 0.75}),
                                       EntropyUnit::nats),
              0.8112781244591328 * std::numbers::ln2, 1e-12);
}

TEST(KlDiscrete, TextbookValues) {
  const DiscreteDistribution p({0.3, 0.7});
  const auto same = infogeo::kl_discrete(p, p);
  EXPECT_DOUBLE_EQ(same.value, 0.0);
  EXPECT_FALSE(same.is_infinite);

  const auto broken = infogeo::kl_discrete(DiscreteDistribution({0.5, 0.5}),
                                           DiscreteDistribution({1.0, 0.0}));
  EXPECT_TRUE(broken.is_infinite);
  EXPECT_TRUE(std::isinf(broken.value));

  const auto skew = infogeo::kl_discrete(DiscreteDistribution({0.25, 0.75}),
                                         DiscreteDistribution({0.5, 0.5}));
  EXPECT_NEAR(skew.value, 0.13081203594113697, 1e-15);
}

TEST(KlDiscrete, RejectsLengthMismatch) {
  EXPECT_THROW(infogeo::kl_discrete(DiscreteDistribution({0.5, 0.5}),
                                    DiscreteDistribution({0.2, 0.3, 0.5})),
               std::invalid_argument);
}

TEST(KlDiscrete, GibbsInequalityOnRandomPairs) {
  SplitMix64 rng(101);
  for (int i = 0; i < 200; ++i) {
    const int bins = 2 + static_cast<int>(rng.next() % 4);
    const auto g = random_simplex(rng, bins);
    const auto p = random_simplex(rng, bins);
    const auto d = infogeo::kl_discrete(g, p);
    EXPECT_GE(d.value, -1e-12);
    EXPECT_DOUBLE_EQ(infogeo::kl_discrete(g, g).value, 0.0);
    double max_gap = 0.0;
    for (int k = 0; k < bins; ++k) max_gap = std::max(max_gap, std::abs(g[k] - p[k]));
    if (max_gap > 1e-6) EXPECT_GT(d.value, 0.0);
  }
}

TEST(KlDiscrete, AsymmetryExhibit) {
  const DiscreteDistribution g({0.25, 0.75});
  const DiscreteDistribution p({0.5, 0.5});
  const double forward = infogeo::kl_discrete(g, p).value;
  const double backward = infogeo::kl_discrete(p, g).value;
  EXPECT_GT(std::abs(forward - backward), 1e-3);
  EXPECT_NEAR(std::abs(forward - backward), 0.013029000284753456, 1e-15);
}

TEST(KullbackNumber, IdenticalGaussiansGiveZero) {
  const auto f = infogeo::make_gaussian(2, 1.0);
  const ParamPoint theta({0.3, -0.8});
  const auto d = infogeo::kullback_number(f, theta, f, theta, spec_for(f, theta));
  EXPECT_LT(std::abs(d.value), 1e-10);
}

TEST(KullbackNumber, MatchesClosedFormExamples) {
  const auto f1 = infogeo::make_gaussian(1, 1.0);
  const auto d1 = infogeo::kullback_number(f1, ParamPoint({0.0}), f1,
                                           ParamPoint({1.0}),
                                           spec_for(f1, ParamPoint({0.0})));
  EXPECT_NEAR(d1.value, 0.5, 1e-8);

  const auto f3 = infogeo::make_gaussian(3, 2.0);
  const ParamPoint tq({1.0, 1.0, 0.0});
  const auto d3 = infogeo::kullback_number(f3, tq, f3, ParamPoint::zeros(3),
                                           spec_for(f3, tq));
  EXPECT_NEAR(d3.value, 0.25, 1e-8);
}

TEST(KullbackNumber, MatchesClosedFormOnRandomCases) {
  SplitMix64 rng(29);
  for (int i = 0; i < 50; ++i) {
    const int dim = 1 + static_cast<int>(rng.next() % 3);
    const double a = infogeo::testing::uniform(rng, 0.5, 2.0);
    const auto f = infogeo::make_gaussian(dim, a);
    const auto theta_p = infogeo::testing::random_param(rng, dim, a);
    std::vector<double> dtheta(static_cast<std::size_t>(dim));
    for (auto& d : dtheta) d = rng.next_symmetric(2.0 * a / std::sqrt(dim));
    const ParamPoint theta_q = theta_p.translated(dtheta, 1.0);
    const auto d =
        infogeo::kullback_number(f, theta_q, f, theta_p, spec_for(f, theta_q));
    EXPECT_NEAR(d.value, gaussian_kl_closed_form(dtheta, a), 1e-8)
        << "dim=" << dim << " a=" << a;
  }
}

TEST(KullbackNumber, TrapezoidSchemeAgreesWithClosedForm) {
  const auto f = infogeo::make_gaussian(1, 1.0);
  auto spec = spec_for(f, ParamPoint({1.0}));
  spec.scheme = infogeo::QuadScheme::trapezoid_truncated;
  spec.nodes_per_axis = 201;
  const auto d =
      infogeo::kullback_number(f, ParamPoint({1.0}), f, ParamPoint({0.0}), spec);
  EXPECT_NEAR(d.value, 0.5, 1e-8);
}

TEST(KullbackNumber, RefusesComplexFamilies) {
  const auto cg = infogeo::make_complex_gaussian(1.0);
  const auto g = infogeo::make_gaussian(4, 1.0);
  const ParamPoint theta = ParamPoint::zeros(4);
  EXPECT_THROW(
      infogeo::kullback_number(cg, theta, g, theta, spec_for(cg, theta)),
      infogeo::UnsupportedForComplexError);
  EXPECT_THROW(
      infogeo::kullback_number(g, theta, cg, theta, spec_for(g, theta)),
      infogeo::UnsupportedForComplexError);
}

TEST(KullbackNumber, RejectsSampleDimMismatch) {
  const auto f1 = infogeo::make_gaussian(1, 1.0);
  const auto f2 = infogeo::make_gaussian(2, 1.0);
  EXPECT_THROW(infogeo::kullback_number(f1, ParamPoint({0.0}), f2,
                                        ParamPoint({0.0, 0.0}),
                                        spec_for(f1, ParamPoint({0.0}))),
               std::invalid_argument);
}

TEST(ExpansionResiduals, LocationGaussianIsExactlyQuadratic) {
  const auto f = infogeo::make_gaussian(1, 1.0);
  const ParamPoint theta({0.0});
  const auto g = infogeo::fisher_analytic(f, theta);
  const auto rep = infogeo::expansion_residuals(
      f, theta, {1.0}, {0.1, 0.05, 0.025}, spec_for(f, theta), g);
  ASSERT_EQ(rep.residuals.size(), 3u);
  EXPECT_NEAR(rep.lhs[0], 0.005, 1e-12);
  for (double r : rep.residuals) EXPECT_LT(std::abs(r), 1e-10);
}

TEST(ExpansionResiduals, SamePointDivergenceIsZero) {
  const auto f = infogeo::make_gaussian(2, 1.5);
  const ParamPoint theta({0.4, -0.2});
  const auto d = infogeo::kullback_number(f, theta, f, theta, spec_for(f, theta));
  EXPECT_LT(std::abs(d.value), 1e-12);
}

TEST(ExpansionResiduals, WarpedFamilyShowsCubicRemainder) {
  const auto f = infogeo::testing::make_warped_gaussian(1, 1.0);
  const ParamPoint theta({1.0});
  const auto g = infogeo::fisher_analytic(f, theta);
  const auto rep = infogeo::expansion_residuals(
      f, theta, {1.0}, {0.1, 0.05, 0.025}, spec_for(f, theta), g);
  EXPECT_GE(rep.fitted_order, 2.5);
  EXPECT_LE(rep.fitted_order, 3.5);
  // Leading residual frozen from the closed form (m(1.1) - m(1))^2 / 2
  // minus eps^2 m'(1)^2 / 2.
  EXPECT_NEAR(rep.residuals[0], 4.078049999999972e-4, 1e-10);
}

TEST(ExpansionResiduals, ValidatesArguments) {
  const auto f = infogeo::make_gaussian(1, 1.0);
  const ParamPoint theta({0.0});
  const auto g = infogeo::fisher_analytic(f, theta);
  const auto spec = spec_for(f, theta);
  EXPECT_THROW(infogeo::expansion_residuals(f, theta, {0.0}, {0.1, 0.05, 0.025},
                                            spec, g),
               std::invalid_argument);
  EXPECT_THROW(infogeo::expansion_residuals(f, theta, {1.0}, {0.05, 0.1, 0.025},
                                            spec, g),
               std::invalid_argument);
  EXPECT_THROW(
      infogeo::expansion_residuals(f, theta, {1.0}, {1.5, 0.1, 0.05}, spec, g),
      std::invalid_argument);
  EXPECT_THROW(infogeo::expansion_residuals(f, theta, {1.0}, {0.1, 0.05}, spec, g),
               std::invalid_argument);
}

TEST(AxiomProbe, EuclideanDistanceSatisfiesAllAxioms) {
  infogeo::MetricTensor g;
  g.entries = Eigen::Matrix3d::Identity();
  auto sample = [](SplitMix64& rng) {
    return infogeo::testing::random_param(rng, 3, 1.0);
  };
  auto dist = [&g](const ParamPoint& a, const ParamPoint& b) {
    return infogeo::displacement_interval(g, a, b).magnitude;
  };
  const auto rep = infogeo::probe_distance_axioms(sample, dist, 1000, 1e-12, 7);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_EQ(rep.triangle_violations, 0);
}

TEST(AxiomProbe, KlDivergenceViolatesSymmetryAndTriangle) {
  auto sample = [](SplitMix64& rng) { return random_simplex(rng, 3); };
  auto dist = [](const DiscreteDistribution& a, const DiscreteDistribution& b) {
    return infogeo::kl_discrete(a, b).value;
  };
  const auto rep = infogeo::probe_distance_axioms(sample, dist, 1000, 1e-9, 13);
  EXPECT_EQ(rep.positivity_violations, 0);
  EXPECT_GT(rep.symmetry_violations, 0);
  EXPECT_GT(rep.triangle_violations, 0);
  EXPECT_GT(rep.max_symmetry_gap, 1e-3);
  EXPECT_FALSE(rep.all_hold());
}
