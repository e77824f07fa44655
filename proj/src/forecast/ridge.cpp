#include <Eigen/Dense>

#include <cmath>

#include "noiseplane/error.hpp"
#include "noiseplane/forecast.hpp"

namespace noiseplane {

RidgeFit fit_lagged_ridge(std::span<const double> train, int lags, double lambda) {
  if (lags < 1) throw Error(ErrorCode::InvalidArgument, "lags must be >= 1");
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  const auto L = static_cast<std::size_t>(lags);
  if (train.size() < L + 2) {
    throw Error(ErrorCode::InsufficientData,
                "LaggedRidge needs at least lags+2 = " + std::to_string(L + 2) + " points");
  }
  const auto rows = static_cast<Eigen::Index>(train.size() - L);
  Eigen::MatrixXd x(rows, lags);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t t = L + static_cast<std::size_t>(r);
    y(r) = train[t];
    for (int i = 0; i < lags; ++i) x(r, i) = train[t - 1 - static_cast<std::size_t>(i)];
  }
  // Centering absorbs the unpenalized intercept.
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  x.rowwise() -= x_mean;
  y.array() -= y_mean;

  Eigen::VectorXd beta;
  if (lambda > 0.0) {
    Eigen::MatrixXd gram = x.transpose() * x;
    gram.diagonal().array() += lambda;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw Error(ErrorCode::SingularFit, "ridge normal equations are not positive definite");
    }
    beta = ldlt.solve(x.transpose() * y);
  } else {
    beta = x.completeOrthogonalDecomposition().solve(y);
  }
  if (!beta.allFinite()) throw Error(ErrorCode::SingularFit, "non-finite ridge coefficients");

  RidgeFit fit;
  fit.lags = lags;
  fit.lambda = lambda;
  fit.coef.assign(beta.data(), beta.data() + lags);
  fit.intercept = y_mean - x_mean.dot(beta);
  fit.tail.assign(train.end() - static_cast<long>(L), train.end());
  return fit;
}

std::vector<double> RidgeFit::forecast(int horizon) const {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  std::vector<double> window = tail;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (int h = 0; h < horizon; ++h) {
    double pred = intercept;
    const std::size_t n = window.size();
    for (std::size_t i = 0; i < coef.size(); ++i) pred += coef[i] * window[n - 1 - i];
    if (!std::isfinite(pred)) throw Error(ErrorCode::SingularFit, "non-finite ridge forecast");
    out.push_back(pred);
    window.push_back(pred);
  }
  return out;
}

}  // namespace noiseplane
