#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "noiseplane/complexity.hpp"
#include "noiseplane/error.hpp"
#include "noiseplane/ordinal.hpp"

namespace noiseplane {
namespace {

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n, double concentration,
                              std::size_t zeros = 0) {
  std::gamma_distribution<double> g(concentration, 1.0);
  std::vector<double> p(n);
  for (auto& v : p) v = g(rng);
  for (std::size_t i = 0; i < zeros && i < n - 1; ++i) p[(i * 7) % n] = 0.0;
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= sum;
  return p;
}

// D_JS through entropies: S((p+q)/2) - (S(p) + S(q))/2.
double js_by_entropy(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  return shannon_entropy(m) - 0.5 * (shannon_entropy(p) + shannon_entropy(q));
}

TEST(JsDivergence, ClosedForms) {
  const std::vector<double> a{1, 0}, b{0, 1}, half{0.5, 0.5};
  EXPECT_NEAR(js_divergence(a, b), std::log(2.0), 1e-15);
  const double expected = std::log(2.0) - 0.75 * std::log(3.0) + 0.5 * std::log(2.0);
  EXPECT_NEAR(expected, 0.2158, 1e-4);
  EXPECT_NEAR(js_divergence(half, a), expected, 1e-14);
  EXPECT_EQ(js_divergence(half, half), 0.0);
}

TEST(JsDivergence, AgreesWithEntropyRoute) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = dirichlet(rng, 24, 0.3, trial % 4);
    const auto q = dirichlet(rng, 24, 1.5, trial % 3);
    EXPECT_NEAR(js_divergence(p, q), js_by_entropy(p, q), 1e-12);
  }
}

TEST(JsDivergence, DimensionMismatch) {
  const std::vector<double> a{1, 0}, b{1, 0, 0};
  try {
    js_divergence(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(MaxJsDivergence, MatchesDeltaVersusUniform) {
  for (std::size_t n : {2u, 6u, 24u, 120u, 720u}) {
    std::vector<double> delta(n, 0.0), uniform(n, 1.0 / static_cast<double>(n));
    delta[0] = 1.0;
    EXPECT_NEAR(max_js_divergence(n), js_by_entropy(delta, uniform), 1e-12) << n;
  }
}

TEST(StatisticalComplexity, ReferencePoints) {
  const std::vector<double> uniform(6, 1.0 / 6.0);
  const auto u = statistical_complexity(uniform);
  EXPECT_NEAR(u.h, 1.0, 1e-15);
  EXPECT_NEAR(u.c, 0.0, 1e-15);

  const std::vector<double> delta{0, 0, 1, 0, 0, 0};
  const auto z = statistical_complexity(delta);
  EXPECT_EQ(z.h, 0.0);
  EXPECT_EQ(z.c, 0.0);

  const std::vector<double> two{0.5, 0.5, 0, 0, 0, 0};
  const auto p = statistical_complexity(two);
  const double h = std::log(2.0) / std::log(6.0);
  EXPECT_NEAR(p.h, 0.3869, 1e-4);
  EXPECT_NEAR(p.h, h, 1e-14);
  // J_max from its closed form, D_JS from the entropy route
  const double n = 6.0;
  const double jmax = -0.5 * ((n + 1) / n * std::log(n + 1) - 2 * std::log(2 * n) + std::log(n));
  EXPECT_NEAR(p.c, h * js_by_entropy(two, uniform) / jmax, 1e-12);
}

TEST(StatisticalComplexity, UnitSquareAndBounded) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = trial % 2 == 0 ? 24 : 120;
    const auto p = dirichlet(rng, n, 0.05 + 0.01 * (trial % 50), trial % 5);
    const auto pt = statistical_complexity(p);
    ASSERT_GE(pt.h, 0.0);
    ASSERT_LE(pt.h, 1.0);
    ASSERT_GE(pt.c, 0.0);
    ASSERT_LE(pt.c, 1.0);
    const auto bounds = complexity_bounds_at(pt.h, n);
    EXPECT_GE(pt.c, bounds.lower - 1e-9) << "trial " << trial;
    EXPECT_LE(pt.c, bounds.upper + 1e-9) << "trial " << trial;
  }
}

TEST(Boundaries, ShapeAndOrdering) {
  const auto [lower, upper] = ch_boundaries(5, 64);
  EXPECT_EQ(lower.kind, BoundaryKind::Min);
  EXPECT_EQ(upper.kind, BoundaryKind::Max);
  ASSERT_GE(lower.points.size(), 16u);
  ASSERT_GE(upper.points.size(), 16u);
  for (const auto* curve : {&lower, &upper}) {
    for (std::size_t i = 1; i < curve->points.size(); ++i) {
      EXPECT_LE(curve->points[i - 1].h, curve->points[i].h);
    }
    EXPECT_NEAR(curve->points.front().h, 0.0, 1e-9);
    EXPECT_NEAR(curve->points.back().h, 1.0, 1e-9);
    EXPECT_NEAR(curve->points.back().c, 0.0, 1e-9);
  }
  for (const auto& p : lower.points) {
    const auto b = complexity_bounds_at(p.h, 120);
    EXPECT_LE(b.lower, b.upper + 1e-12);
    EXPECT_NEAR(p.c, b.lower, 1e-6);
  }
  EXPECT_THROW(ch_boundaries(5, 4), Error);
}

TEST(Boundaries, FamiliesAttainTheirBounds) {
  // one spike over a uniform floor realizes the minimum curve
  const std::size_t n = 24;
  for (double spike : {0.1, 0.3, 0.6, 0.9}) {
    std::vector<double> p(n, (1.0 - spike) / (n - 1));
    p[0] = spike;
    const auto pt = statistical_complexity(p);
    EXPECT_NEAR(pt.c, complexity_bounds_at(pt.h, n).lower, 1e-6);
  }
  // a uniform distribution over half the states lies on the maximum curve
  std::vector<double> half(n, 0.0);
  for (std::size_t i = 0; i < n / 2; ++i) half[i] = 2.0 / n;
  const auto pt = statistical_complexity(half);
  EXPECT_NEAR(pt.c, complexity_bounds_at(pt.h, n).upper, 1e-6);
}

TEST(Pjsd, MetricAxioms) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = dirichlet(rng, 6, 0.7, trial % 3);
    const auto q = dirichlet(rng, 6, 0.7);
    const auto r = dirichlet(rng, 6, 0.7, trial % 2);
    EXPECT_LE(pjsd(p, p), 1e-12);
    EXPECT_EQ(pjsd(p, q), pjsd(q, p));
    EXPECT_LE(pjsd(p, r), pjsd(p, q) + pjsd(q, r) + 1e-9);
    EXPECT_GE(pjsd(p, q), 0.0);
    EXPECT_LE(pjsd(p, q), 1.0);
  }
}

TEST(Pjsd, OppositeMonotoneSeriesSaturate) {
  std::vector<double> up(50), down(50);
  std::iota(up.begin(), up.end(), 0.0);
  std::transform(up.begin(), up.end(), down.begin(), [](double v) { return -v; });
  const OrdinalConfig config{2, 1, true};
  EXPECT_NEAR(pjsd(extract_patterns(up, config), extract_patterns(down, config)), 1.0, 1e-15);
}

}  // namespace
}  // namespace noiseplane
