#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "noiseplane/timeseries.hpp"

namespace noiseplane {

/// One-sided power spectral density on the positive frequencies k/segment,
/// k = 1..segment/2 (cycles per sample, DC excluded).
struct PsdEstimate {
  std::vector<double> freqs;
  std::vector<double> power;
  std::size_t segment = 0;
  double overlap = 0.0;
  std::size_t segments_used = 0;
  std::string window = "hann";
};

struct FrequencyBand {
  double lo = 0.0;
  double hi = 0.5;
};

struct PowerLawFit {
  double alpha = 0.0;      ///< minus the log-log slope
  double intercept = 0.0;  ///< ln power at unit frequency
  double r2 = 0.0;
  FrequencyBand band;
  std::size_t points = 0;
};

inline constexpr std::size_t kDefaultSegment = 256;
inline constexpr double kDefaultOverlap = 0.5;

/// Welch estimate: periodic Hann window, each segment mean-removed, segments
/// stepped by segment - floor(overlap * segment), periodograms averaged.
/// Scaled so that sum(power) / segment equals the window-weighted mean square.
/// Requires n >= segment >= 16 and overlap in [0, 0.9].
PsdEstimate welch_psd(std::span<const double> values, std::size_t segment = kDefaultSegment,
                      double overlap = kDefaultOverlap);
PsdEstimate welch_psd(const TimeSeries& series, std::size_t segment = kDefaultSegment,
                      double overlap = kDefaultOverlap);

/// [4/segment, 0.25]: skips the leakage-dominated lowest bins.
FrequencyBand default_band(std::size_t segment) noexcept;

/// Least squares of ln power on ln frequency over bins inside `band`
/// (inclusive). Throws BandTooNarrow below 8 bins.
PowerLawFit fit_power_law(const PsdEstimate& psd, FrequencyBand band);
PowerLawFit fit_power_law(const PsdEstimate& psd);

std::string to_json(const PowerLawFit& fit);

}  // namespace noiseplane
