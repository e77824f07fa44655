#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noiseplane/timeseries.hpp"

namespace noiseplane {

enum class ForecasterKind { NaiveDrift, NaiveSeasonal, Ses, Holt, Arima, AutoArima, LaggedRidge };

struct ArimaOrder {
  int p = 0;
  int d = 0;
  int q = 0;
  friend bool operator==(const ArimaOrder&, const ArimaOrder&) = default;
};

/// Model selection plus its parameters. Only the fields relevant to `kind` are
/// read; unset smoothing coefficients are optimized in-sample.
struct ForecasterSpec {
  ForecasterKind kind = ForecasterKind::NaiveSeasonal;
  int season = 1;                ///< K for NaiveSeasonal
  std::optional<double> alpha;   ///< SES / Holt level smoothing
  std::optional<double> beta;    ///< Holt trend smoothing
  ArimaOrder order;              ///< ARIMA
  int lags = 30;                 ///< LaggedRidge
  double lambda = 1.0;           ///< LaggedRidge penalty

  /// Throws InvalidArgument on out-of-range parameters.
  void validate() const;
  std::size_t min_train_length() const;

  /// Canonical display name, e.g. "NaiveSeasonal", "ARIMA(2,1,1)",
  /// "LaggedRidge(lags=30,lambda=1)". parse(name()) round-trips.
  std::string name() const;

  /// Accepts "naive_drift", "naive_seasonal(7)", "ses(alpha=0.3)", "holt",
  /// "arima(2,1,1)", "auto_arima", "ridge(lags=30,lambda=1.0)" and the
  /// canonical names, case-insensitively.
  static ForecasterSpec parse(std::string_view text);

  std::string to_json() const;
  static ForecasterSpec from_json(std::string_view text);

  friend bool operator==(const ForecasterSpec&, const ForecasterSpec&) = default;
};

/// Comma-separated list; commas inside parentheses belong to the model.
std::vector<ForecasterSpec> parse_model_list(std::string_view text);

struct Forecast {
  std::size_t origin = 0;      ///< index of the last training point
  std::vector<double> values;  ///< horizon values, all finite
};

/// Fits `spec` on `train` and forecasts `horizon` steps. Throws
/// InsufficientData for short inputs and SingularFit when the estimating
/// equations cannot be solved or the forecast is not finite.
Forecast fit_predict(const ForecasterSpec& spec, std::span<const double> train, int horizon);
Forecast fit_predict(const ForecasterSpec& spec, const TimeSeries& train, int horizon);

// Individual models ---------------------------------------------------------

/// y(T) + h (y(T) - y(1)) / (T - 1).
std::vector<double> naive_drift_forecast(std::span<const double> train, int horizon);
/// y(T - K + 1 + ((h - 1) mod K)).
std::vector<double> naive_seasonal_forecast(std::span<const double> train, int season,
                                            int horizon);

struct SesFit {
  double alpha = 0.0;
  double level = 0.0;
  double sse = 0.0;
  std::vector<double> forecast(int horizon) const;
};

/// Simple exponential smoothing, level initialised at the first value. With no
/// alpha given, picks the best of {0, 0.01, ..., 1} by one-step SSE.
SesFit fit_ses(std::span<const double> train, std::optional<double> alpha = std::nullopt);
double ses_sse(std::span<const double> train, double alpha);

struct HoltFit {
  double alpha = 0.0;
  double beta = 0.0;
  double level = 0.0;
  double trend = 0.0;
  double sse = 0.0;
  std::vector<double> forecast(int horizon) const;
};

/// Holt's linear trend method, level = y(1) and trend = y(2) - y(1) initially.
/// Unset coefficients are optimized: grid start, then Nelder-Mead on [0,1]^2.
HoltFit fit_holt(std::span<const double> train, std::optional<double> alpha = std::nullopt,
                 std::optional<double> beta = std::nullopt);
double holt_sse(std::span<const double> train, double alpha, double beta);

struct ArimaFit {
  ArimaOrder order;
  bool include_mean = false;  ///< only for d = 0
  double mean = 0.0;
  std::vector<double> ar;
  std::vector<double> ma;
  double css = 0.0;           ///< conditional sum of squares
  std::size_t n_eff = 0;      ///< residuals entering css
  double sigma2 = 0.0;
  double aicc = 0.0;

  std::vector<double> forecast(int horizon) const;

  // state needed to forecast
  std::vector<double> history;    ///< training series as given
  std::vector<double> residuals;  ///< in-sample residuals of the differenced series
};

/// Hannan-Rissanen: long autoregression for residual proxies, then least
/// squares on lagged values and lagged proxies. d = 0 fits around the sample
/// mean; d >= 1 has no constant. The conditional sum of squares skips the
/// first max(`conditioning`, p + d) observations of the original series, so
/// candidates sharing a conditioning value are scored on the same sample.
ArimaFit fit_arima(std::span<const double> train, ArimaOrder order,
                   std::optional<std::size_t> conditioning = std::nullopt);

/// Minimal AICc over p, q in [0, max_pq] and d in [0, max_d], all scored with
/// conditioning max_pq + max_d. Candidates that cannot be fitted are skipped.
ArimaFit auto_arima(std::span<const double> train, int max_pq = 3, int max_d = 2);

struct RidgeFit {
  int lags = 0;
  double lambda = 0.0;
  std::vector<double> coef;  ///< coef[i] multiplies y(t - 1 - i)
  double intercept = 0.0;
  std::vector<double> tail;  ///< last `lags` training values, oldest first
  std::vector<double> forecast(int horizon) const;
};

/// Ridge regression of y(t) on y(t-1..t-lags) and an unpenalized intercept.
/// lambda = 0 gives the minimum-norm least-squares solution.
RidgeFit fit_lagged_ridge(std::span<const double> train, int lags, double lambda);

}  // namespace noiseplane
