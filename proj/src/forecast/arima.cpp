#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "noiseplane/error.hpp"
#include "noiseplane/forecast.hpp"

namespace noiseplane {

namespace {

std::vector<double> difference(std::span<const double> y) {
  std::vector<double> out;
  if (y.size() < 2) return out;
  out.resize(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) out[i - 1] = y[i] - y[i - 1];
  return out;
}

std::vector<std::vector<double>> difference_levels(std::span<const double> y, int d) {
  std::vector<std::vector<double>> levels;
  levels.emplace_back(y.begin(), y.end());
  for (int k = 0; k < d; ++k) levels.push_back(difference(levels.back()));
  return levels;
}

// Least squares with an explicit rank check; rank deficiency is SingularFit.
Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < x.cols()) {
    throw Error(ErrorCode::SingularFit, "regression design is rank deficient");
  }
  Eigen::VectorXd beta = qr.solve(y);
  if (!beta.allFinite()) throw Error(ErrorCode::SingularFit, "non-finite coefficients");
  return beta;
}

// Residuals of an AR(order) least-squares fit; entries before `order` are 0.
std::vector<double> long_ar_residuals(std::span<const double> w, int order) {
  const auto n = static_cast<Eigen::Index>(w.size());
  const Eigen::Index rows = n - order;
  Eigen::MatrixXd x(rows, order);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index t = r + order;
    y(r) = w[static_cast<std::size_t>(t)];
    for (int i = 0; i < order; ++i) x(r, i) = w[static_cast<std::size_t>(t - 1 - i)];
  }
  const Eigen::VectorXd beta = solve_least_squares(x, y);
  std::vector<double> resid(w.size(), 0.0);
  const Eigen::VectorXd e = y - x * beta;
  for (Eigen::Index r = 0; r < rows; ++r) resid[static_cast<std::size_t>(r + order)] = e(r);
  return resid;
}

// Conditional residuals e(t) for t >= p, zero before.
std::vector<double> conditional_residuals(std::span<const double> w, std::span<const double> ar,
                                          std::span<const double> ma) {
  const std::size_t p = ar.size();
  std::vector<double> e(w.size(), 0.0);
  for (std::size_t t = p; t < w.size(); ++t) {
    double pred = 0.0;
    for (std::size_t i = 0; i < p; ++i) pred += ar[i] * w[t - 1 - i];
    for (std::size_t j = 0; j < ma.size() && j < t; ++j) pred += ma[j] * e[t - 1 - j];
    e[t] = w[t] - pred;
  }
  return e;
}

int long_ar_order(std::size_t n, const ArimaOrder& order) {
  const int rule = static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
  int m = std::max(rule, order.p + order.q);
  const int cap = static_cast<int>((n - 1) / 3);
  return std::min(m, cap);
}

void validate_order(const ArimaOrder& order) {
  if (order.p < 0 || order.p > 5 || order.q < 0 || order.q > 5 || order.d < 0 || order.d > 2) {
    throw Error(ErrorCode::InvalidArgument, "ARIMA order out of range (p,q in [0,5], d in [0,2])");
  }
}

}  // namespace

ArimaFit fit_arima(std::span<const double> train, ArimaOrder order,
                   std::optional<std::size_t> conditioning) {
  validate_order(order);
  const std::size_t needed = static_cast<std::size_t>(order.p + order.d + order.q + 2);
  if (train.size() < needed) {
    throw Error(ErrorCode::InsufficientData,
                "ARIMA needs at least " + std::to_string(needed) + " points");
  }
  ArimaFit fit;
  fit.order = order;
  fit.history.assign(train.begin(), train.end());

  auto levels = difference_levels(train, order.d);
  std::vector<double> w = std::move(levels.back());
  if (order.d == 0) {
    fit.include_mean = true;
    fit.mean = mean(w);
    for (double& v : w) v -= fit.mean;
  }
  const std::size_t n = w.size();
  const int p = order.p;
  const int q = order.q;

  if (p > 0 || q > 0) {
    std::vector<double> proxy;
    std::size_t first = static_cast<std::size_t>(p);
    if (q > 0) {
      const int m = long_ar_order(n, order);
      if (m < 1) throw Error(ErrorCode::InsufficientData, "series too short for Hannan-Rissanen");
      proxy = long_ar_residuals(w, m);
      first = static_cast<std::size_t>(std::max(p, m + q));
    }
    const auto cols = static_cast<Eigen::Index>(p + q);
    if (n <= first || n - first < static_cast<std::size_t>(cols + 1)) {
      throw Error(ErrorCode::InsufficientData, "too few observations for ARIMA regression");
    }
    const auto rows = static_cast<Eigen::Index>(n - first);
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const std::size_t t = first + static_cast<std::size_t>(r);
      y(r) = w[t];
      for (int i = 0; i < p; ++i) x(r, i) = w[t - 1 - static_cast<std::size_t>(i)];
      for (int j = 0; j < q; ++j) x(r, p + j) = proxy[t - 1 - static_cast<std::size_t>(j)];
    }
    const Eigen::VectorXd beta = solve_least_squares(x, y);
    fit.ar.assign(beta.data(), beta.data() + p);
    fit.ma.assign(beta.data() + p, beta.data() + p + q);
  }

  fit.residuals = conditional_residuals(w, fit.ar, fit.ma);
  // Residual s of the differenced series is the one-step error on original
  // index s + d; the first `cond` original indices are excluded.
  const std::size_t cond = std::max(conditioning.value_or(0),
                                    static_cast<std::size_t>(p + order.d));
  const std::size_t first_resid = cond - static_cast<std::size_t>(order.d);
  if (first_resid + 2 > n) {
    throw Error(ErrorCode::InsufficientData, "conditioning leaves no residuals");
  }
  fit.n_eff = n - first_resid;
  double css = 0.0;
  for (std::size_t t = first_resid; t < n; ++t) css += fit.residuals[t] * fit.residuals[t];
  fit.css = css;
  if (!std::isfinite(css)) throw Error(ErrorCode::SingularFit, "residual recursion diverged");

  const double neff = static_cast<double>(fit.n_eff);
  fit.sigma2 = std::max(css / neff, std::numeric_limits<double>::min());
  const double k = static_cast<double>(p + q + (fit.include_mean ? 1 : 0) + 1);
  const double loglik = -0.5 * neff * (std::log(2.0 * std::numbers::pi * fit.sigma2) + 1.0);
  const double aic = -2.0 * loglik + 2.0 * k;
  fit.aicc = neff - k - 1.0 > 0.0 ? aic + 2.0 * k * (k + 1.0) / (neff - k - 1.0)
                                  : std::numeric_limits<double>::infinity();
  return fit;
}

std::vector<double> ArimaFit::forecast(int horizon) const {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  const auto levels = difference_levels(history, order.d);
  std::vector<double> w = levels.back();
  if (include_mean) {
    for (double& v : w) v -= mean;
  }
  std::vector<double> e = residuals;
  const auto h = static_cast<std::size_t>(horizon);
  for (std::size_t step = 0; step < h; ++step) {
    const std::size_t t = w.size();
    double pred = 0.0;
    for (std::size_t i = 0; i < ar.size(); ++i) {
      if (t >= 1 + i) pred += ar[i] * w[t - 1 - i];
    }
    for (std::size_t j = 0; j < ma.size(); ++j) {
      if (t >= 1 + j) pred += ma[j] * e[t - 1 - j];
    }
    w.push_back(pred);
    e.push_back(0.0);
  }
  std::vector<double> out(w.end() - static_cast<long>(h), w.end());
  if (include_mean) {
    for (double& v : out) v += mean;
  }
  // integrate back through each differencing level
  for (int k = order.d - 1; k >= 0; --k) {
    double prev = levels[static_cast<std::size_t>(k)].back();
    for (double& v : out) {
      v = prev + v;
      prev = v;
    }
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw Error(ErrorCode::SingularFit, "non-finite ARIMA forecast");
  }
  return out;
}

ArimaFit auto_arima(std::span<const double> train, int max_pq, int max_d) {
  std::optional<ArimaFit> best;
  const auto common = static_cast<std::size_t>(max_pq + max_d);
  for (int d = 0; d <= max_d; ++d) {
    for (int p = 0; p <= max_pq; ++p) {
      for (int q = 0; q <= max_pq; ++q) {
        try {
          ArimaFit fit = fit_arima(train, {p, d, q}, common);
          if (!std::isfinite(fit.aicc)) continue;
          if (!best || fit.aicc < best->aicc) best = std::move(fit);
        } catch (const Error&) {
          // unfit candidates are skipped
        }
      }
    }
  }
  if (!best) throw Error(ErrorCode::SingularFit, "no ARIMA candidate could be fitted");
  return *std::move(best);
}

}  // namespace noiseplane
