#include "noiseplane/noise.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "fft.hpp"
#include "noiseplane/error.hpp"

namespace noiseplane {

namespace {

void require_length(std::size_t length) {
  if (length < 8) throw Error(ErrorCode::InvalidArgument, "noise length must be >= 8");
}

std::string noise_name(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "noise_alpha%g", alpha);
  return buf;
}

}  // namespace

TimeSeries generate_noise(const NoiseSpec& spec) {
  require_length(spec.length);
  if (!std::isfinite(spec.alpha) || spec.alpha < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be finite and >= 0");
  }
  const std::size_t n = spec.length;
  const std::size_t bins = n / 2 + 1;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<std::complex<double>> spectrum(bins);
  for (std::size_t k = 1; k < bins; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(n);
    const double amplitude = std::pow(f, -0.5 * spec.alpha);
    const double re = gauss(rng);
    const double im = gauss(rng);
    spectrum[k] = amplitude * std::complex<double>(re, im);
  }
  spectrum[0] = 0.0;
  if (n % 2 == 0) spectrum[bins - 1] = {spectrum[bins - 1].real() * std::sqrt(2.0), 0.0};

  auto values = detail::inverse_real_fft(spectrum, n);
  return TimeSeries::from_values(noise_name(spec.alpha), standardize(values));
}

std::vector<double> random_walk(std::size_t length, std::uint64_t seed) {
  require_length(length);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> out(length);
  double level = 0.0;
  for (auto& v : out) {
    level += gauss(rng);
    v = level;
  }
  return out;
}

TimeSeries brownian_by_integration(std::size_t length, std::uint64_t seed) {
  return TimeSeries::from_values("brownian_walk", standardize(random_walk(length, seed)));
}

const std::vector<NoiseColor>& reference_noises() {
  static const std::vector<NoiseColor> colors{
      {"white", 0.0}, {"pink", 1.0}, {"brownian", 2.0}, {"f-2.5", 2.5}, {"f-3", 3.0}};
  return colors;
}

const std::vector<NoiseColor>& plane_noises() {
  static const std::vector<NoiseColor> colors{
      {"white", 0.0}, {"pink", 1.0}, {"brownian", 2.0}, {"f-2.5", 2.5}};
  return colors;
}

}  // namespace noiseplane
