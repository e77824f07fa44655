#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "noiseplane/timeseries.hpp"

namespace noiseplane {

struct NoiseSpec {
  double alpha = 0.0;         ///< spectral exponent, S(f) ~ 1/f^alpha
  std::size_t length = 1024;  ///< >= 8
  std::uint64_t seed = 0;
};

/// Spectral synthesis: complex Gaussian coefficients scaled by f^(-alpha/2),
/// DC bin zeroed, Nyquist bin real, inverse transform, then standardized.
/// Deterministic in (alpha, length, seed).
TimeSeries generate_noise(const NoiseSpec& spec);

/// Cumulative sum of i.i.d. standard Gaussian increments, unstandardized.
std::vector<double> random_walk(std::size_t length, std::uint64_t seed);

/// random_walk(), standardized.
TimeSeries brownian_by_integration(std::size_t length, std::uint64_t seed);

struct NoiseColor {
  std::string label;
  double alpha;
};

/// white, pink (1/f), brownian (1/f^2), 1/f^2.5, 1/f^3.
const std::vector<NoiseColor>& reference_noises();

/// The four references plotted on the complexity-entropy plane (no 1/f^3).
const std::vector<NoiseColor>& plane_noises();

}  // namespace noiseplane
