#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "noiseplane/error.hpp"
#include "noiseplane/forecast.hpp"

namespace noiseplane {
namespace {

std::vector<double> random_walk_prices(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.03);
  std::vector<double> y(n);
  double price = 50.0;
  for (auto& v : y) v = price *= std::exp(normal(rng));
  return y;
}

std::vector<double> ar1(std::size_t n, double phi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> y(n);
  double prev = 0.0;
  for (std::size_t burn = 0; burn < 200; ++burn) prev = phi * prev + normal(rng);
  for (auto& v : y) v = prev = phi * prev + normal(rng);
  return y;
}

TEST(Naive, HandExamples) {
  const std::vector<double> ramp{1, 2, 3, 4, 5};
  const auto drift = naive_drift_forecast(ramp, 2);
  EXPECT_DOUBLE_EQ(drift[1], 7.0);
  EXPECT_DOUBLE_EQ(drift[0], 6.0);

  std::vector<double> y = random_walk_prices(40, 1);
  y.back() = 42.0;
  for (double v : naive_seasonal_forecast(y, 1, 30)) EXPECT_EQ(v, 42.0);

  const std::vector<double> week{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto seasonal = naive_seasonal_forecast(week, 3, 5);
  EXPECT_EQ(seasonal, (std::vector<double>{7, 8, 9, 7, 8}));
}

TEST(RandomWalkEquivalence, ExactCarryForward) {
  const auto y = random_walk_prices(300, 2);
  const auto naive = fit_predict(ForecasterSpec::parse("naive_seasonal"), y, 30).values;
  const auto arima = fit_predict(ForecasterSpec::parse("arima(0,1,0)"), y, 30).values;
  const auto ses = fit_predict(ForecasterSpec::parse("ses(alpha=1)"), y, 30).values;
  for (int h = 0; h < 30; ++h) {
    EXPECT_EQ(naive[h], y.back());
    EXPECT_EQ(arima[h], y.back());
    EXPECT_EQ(ses[h], y.back());
  }
}

TEST(Ses, GridFitAndSse) {
  const auto y = random_walk_prices(200, 3);
  const auto fit = fit_ses(y);
  EXPECT_GE(fit.alpha, 0.01);
  EXPECT_LE(fit.alpha, 1.0);
  for (double a : {0.1, 0.5, 0.9}) EXPECT_LE(fit.sse, ses_sse(y, a) + 1e-9);
}

TEST(Holt, RecoversLinearTrend) {
  std::vector<double> y(100);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 3.0 + 0.5 * static_cast<double>(i);
  const auto fc = fit_predict(ForecasterSpec::parse("holt"), y, 5).values;
  for (int h = 0; h < 5; ++h) EXPECT_NEAR(fc[h], 3.0 + 0.5 * (99 + h + 1), 1e-6);
  const auto fit = fit_holt(y);
  EXPECT_LE(fit.sse, holt_sse(y, 0.5, 0.5) + 1e-9);
}

TEST(LaggedRidge, LinearSeriesUnpenalized) {
  std::vector<double> y(60);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 10.0 + 2.0 * static_cast<double>(i);
  const auto fit = fit_lagged_ridge(y, 2, 0.0);
  EXPECT_NEAR(fit.forecast(1)[0], 10.0 + 2.0 * 60, 1e-6);
  EXPECT_EQ(fit.coef.size(), 2u);
  EXPECT_EQ(fit.tail.size(), 2u);
}

TEST(LaggedRidge, RejectsShortWindow) {
  const auto y = random_walk_prices(20, 1);
  try {
    fit_lagged_ridge(y, 30, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientData);
  }
}

TEST(Arima, AutoRecoversAr1) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fit = auto_arima(ar1(500, 0.8, seed));
    if (fit.order.p >= 1 && !fit.ar.empty() && fit.ar[0] >= 0.7 && fit.ar[0] <= 0.9) ++hits;
  }
  EXPECT_GE(hits, 15);
}

TEST(Arima, FittedAr1Coefficient) {
  const auto fit = fit_arima(ar1(2000, 0.6, 4), {1, 0, 0});
  ASSERT_EQ(fit.ar.size(), 1u);
  EXPECT_NEAR(fit.ar[0], 0.6, 0.05);
  EXPECT_TRUE(fit.include_mean);
  EXPECT_TRUE(std::isfinite(fit.aicc));
}

TEST(Arima, ConstantSeriesIsSingular) {
  const std::vector<double> flat(100, 3.0);
  try {
    fit_predict(ForecasterSpec::parse("arima(2,0,0)"), flat, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularFit);
  }
}

TEST(Forecasters, TranslationConsistent) {
  const auto y = random_walk_prices(250, 5);
  std::vector<double> shifted(y);
  for (auto& v : shifted) v += 1000.0;
  for (const char* name : {"naive_drift", "naive_seasonal(7)", "ses", "ses(alpha=0.3)", "holt",
                           "arima(1,1,1)", "arima(0,2,1)", "ridge(lags=5,lambda=1)"}) {
    const auto spec = ForecasterSpec::parse(name);
    const auto a = fit_predict(spec, y, 7).values;
    const auto b = fit_predict(spec, shifted, 7).values;
    for (int h = 0; h < 7; ++h) EXPECT_NEAR(b[h], a[h] + 1000.0, 1e-6) << name << " h=" << h;
  }
}

TEST(Forecasters, Deterministic) {
  const auto y = random_walk_prices(250, 6);
  for (const char* name : {"holt", "auto_arima", "ridge"}) {
    const auto spec = ForecasterSpec::parse(name);
    EXPECT_EQ(fit_predict(spec, y, 7).values, fit_predict(spec, y, 7).values) << name;
  }
}

TEST(ForecasterSpec, ParseNamesAndJson) {
  EXPECT_EQ(ForecasterSpec::parse("arima(2,1,1)").name(), "ARIMA(2,1,1)");
  EXPECT_EQ(ForecasterSpec::parse("ridge(lags=30,lambda=1.0)").name(), "LaggedRidge(lags=30,lambda=1)");
  EXPECT_EQ(ForecasterSpec::parse("NaiveSeasonal").name(), "NaiveSeasonal");
  EXPECT_EQ(ForecasterSpec::parse("naive_seasonal(K=7)").season, 7);
  EXPECT_EQ(ForecasterSpec::parse("auto_arima").kind, ForecasterKind::AutoArima);
  const auto list = parse_model_list("naive_drift, arima(1,1,0),ridge(lags=3,lambda=0.5)");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1].order, (ArimaOrder{1, 1, 0}));
  EXPECT_DOUBLE_EQ(list[2].lambda, 0.5);
  for (const auto& spec : list) EXPECT_EQ(ForecasterSpec::from_json(spec.to_json()), spec);
  EXPECT_THROW(ForecasterSpec::parse("prophet"), Error);
  EXPECT_THROW(ForecasterSpec::parse("arima(1,1"), Error);
  EXPECT_THROW(ForecasterSpec::parse("ses(alpha=1.5)"), Error);
}

TEST(ForecasterSpec, MinimumLengthEnforced) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(fit_predict(ForecasterSpec::parse("naive_drift"), one, 1), Error);
  EXPECT_THROW(fit_predict(ForecasterSpec::parse("naive_seasonal(3)"), one, 1), Error);
}

}  // namespace
}  // namespace noiseplane
