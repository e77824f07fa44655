#include <algorithm>
#include <cmath>
#include <limits>

#include "nelder_mead.hpp"
#include "noiseplane/error.hpp"
#include "noiseplane/forecast.hpp"

namespace noiseplane {

namespace {

void check_coefficient(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be in [0, 1]");
  }
}

struct HoltState {
  double level;
  double trend;
  double sse;
};

HoltState run_holt(std::span<const double> y, double alpha, double beta) {
  double level = y[0];
  double trend = y[1] - y[0];
  double sse = 0.0;
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double predicted = level + trend;
    const double err = y[t] - predicted;
    sse += err * err;
    const double next = alpha * y[t] + (1.0 - alpha) * predicted;
    trend = beta * (next - level) + (1.0 - beta) * trend;
    level = next;
  }
  return {level, trend, sse};
}

struct SesState {
  double level;
  double sse;
};

SesState run_ses(std::span<const double> y, double alpha) {
  double level = y[0];
  double sse = 0.0;
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double err = y[t] - level;
    sse += err * err;
    level = alpha * y[t] + (1.0 - alpha) * level;
  }
  return {level, sse};
}

double grid_value(int i) { return static_cast<double>(i) / 100.0; }

}  // namespace

double ses_sse(std::span<const double> train, double alpha) { return run_ses(train, alpha).sse; }

SesFit fit_ses(std::span<const double> train, std::optional<double> alpha) {
  if (train.size() < 2) throw Error(ErrorCode::InsufficientData, "SES needs 2 points");
  double best_alpha = 0.0;
  if (alpha) {
    check_coefficient(*alpha, "alpha");
    best_alpha = *alpha;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
      const double sse = ses_sse(train, grid_value(i));
      if (sse < best) {
        best = sse;
        best_alpha = grid_value(i);
      }
    }
  }
  const auto state = run_ses(train, best_alpha);
  return SesFit{best_alpha, state.level, state.sse};
}

std::vector<double> SesFit::forecast(int horizon) const {
  return std::vector<double>(static_cast<std::size_t>(std::max(horizon, 0)), level);
}

double holt_sse(std::span<const double> train, double alpha, double beta) {
  return run_holt(train, alpha, beta).sse;
}

HoltFit fit_holt(std::span<const double> train, std::optional<double> alpha,
                 std::optional<double> beta) {
  if (train.size() < 3) throw Error(ErrorCode::InsufficientData, "Holt needs 3 points");
  if (alpha) check_coefficient(*alpha, "alpha");
  if (beta) check_coefficient(*beta, "beta");

  double a = alpha.value_or(0.0);
  double b = beta.value_or(0.0);
  if (!alpha && !beta) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 5; i <= 95; i += 10) {
      for (int j = 5; j <= 95; j += 10) {
        const double sse = holt_sse(train, grid_value(i), grid_value(j));
        if (sse < best) {
          best = sse;
          a = grid_value(i);
          b = grid_value(j);
        }
      }
    }
    auto objective = [&](const std::array<double, 2>& x) {
      return holt_sse(train, std::clamp(x[0], 0.0, 1.0), std::clamp(x[1], 0.0, 1.0));
    };
    const auto result = detail::nelder_mead<2>(objective, {a, b}, 0.05);
    if (result.value < best) {
      a = std::clamp(result.x[0], 0.0, 1.0);
      b = std::clamp(result.x[1], 0.0, 1.0);
    }
  } else if (!alpha || !beta) {
    // one free coefficient: 0.01 grid
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
      const double v = grid_value(i);
      const double sse = alpha ? holt_sse(train, a, v) : holt_sse(train, v, b);
      if (sse < best) {
        best = sse;
        (alpha ? b : a) = v;
      }
    }
  }

  const auto state = run_holt(train, a, b);
  HoltFit fit;
  fit.alpha = a;
  fit.beta = b;
  fit.level = state.level;
  fit.trend = state.trend;
  fit.sse = state.sse;
  return fit;
}

std::vector<double> HoltFit::forecast(int horizon) const {
  std::vector<double> out(static_cast<std::size_t>(std::max(horizon, 0)));
  for (int h = 1; h <= horizon; ++h) out[static_cast<std::size_t>(h - 1)] = level + h * trend;
  return out;
}

}  // namespace noiseplane
