#include "noiseplane/error.hpp"
#include "noiseplane/forecast.hpp"

namespace noiseplane {

std::vector<double> naive_drift_forecast(std::span<const double> train, int horizon) {
  if (train.size() < 2) throw Error(ErrorCode::InsufficientData, "NaiveDrift needs 2 points");
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  const double last = train.back();
  const double slope = (last - train.front()) / static_cast<double>(train.size() - 1);
  std::vector<double> out(static_cast<std::size_t>(horizon));
  for (int h = 1; h <= horizon; ++h) out[static_cast<std::size_t>(h - 1)] = last + h * slope;
  return out;
}

std::vector<double> naive_seasonal_forecast(std::span<const double> train, int season,
                                            int horizon) {
  if (season < 1) throw Error(ErrorCode::InvalidArgument, "season must be >= 1");
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (train.size() < static_cast<std::size_t>(season) || train.empty()) {
    throw Error(ErrorCode::InsufficientData, "NaiveSeasonal needs at least K points");
  }
  const std::size_t base = train.size() - static_cast<std::size_t>(season);
  std::vector<double> out(static_cast<std::size_t>(horizon));
  for (int h = 1; h <= horizon; ++h) {
    out[static_cast<std::size_t>(h - 1)] =
        train[base + static_cast<std::size_t>((h - 1) % season)];
  }
  return out;
}

}  // namespace noiseplane
