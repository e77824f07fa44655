#include "noiseplane/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "json.hpp"
#include "noiseplane/error.hpp"

namespace noiseplane {

PsdEstimate welch_psd(std::span<const double> values, std::size_t segment, double overlap) {
  if (segment < 16) throw Error(ErrorCode::InvalidArgument, "segment must be >= 16");
  if (!(overlap >= 0.0 && overlap <= 0.9)) {
    throw Error(ErrorCode::InvalidArgument, "overlap must be in [0, 0.9]");
  }
  if (values.size() < segment) {
    throw Error(ErrorCode::SeriesTooShort, "series of length " + std::to_string(values.size()) +
                                               " is shorter than the segment " +
                                               std::to_string(segment));
  }
  const std::size_t noverlap =
      static_cast<std::size_t>(std::floor(overlap * static_cast<double>(segment)));
  const std::size_t step = segment - noverlap;

  std::vector<double> window(segment);
  double window_energy = 0.0;
  for (std::size_t j = 0; j < segment; ++j) {
    window[j] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                     static_cast<double>(segment));
    window_energy += window[j] * window[j];
  }

  const std::size_t bins = segment / 2;
  std::vector<double> accum(bins, 0.0);
  std::vector<double> buffer(segment);
  std::size_t used = 0;
  for (std::size_t start = 0; start + segment <= values.size(); start += step) {
    double mu = 0.0;
    for (std::size_t j = 0; j < segment; ++j) mu += values[start + j];
    mu /= static_cast<double>(segment);
    for (std::size_t j = 0; j < segment; ++j) {
      buffer[j] = (values[start + j] - mu) * window[j];
    }
    const auto spectrum = detail::real_fft(buffer);
    for (std::size_t k = 1; k <= bins; ++k) accum[k - 1] += std::norm(spectrum[k]);
    ++used;
  }

  PsdEstimate out;
  out.segment = segment;
  out.overlap = overlap;
  out.segments_used = used;
  out.freqs.resize(bins);
  out.power.resize(bins);
  const double scale = 1.0 / (window_energy * static_cast<double>(used));
  for (std::size_t k = 1; k <= bins; ++k) {
    out.freqs[k - 1] = static_cast<double>(k) / static_cast<double>(segment);
    // one-sided: double every bin except Nyquist
    const bool nyquist = (segment % 2 == 0) && k == bins;
    out.power[k - 1] = accum[k - 1] * scale * (nyquist ? 1.0 : 2.0);
  }
  return out;
}

PsdEstimate welch_psd(const TimeSeries& series, std::size_t segment, double overlap) {
  return welch_psd(series.values(), segment, overlap);
}

FrequencyBand default_band(std::size_t segment) noexcept {
  return {4.0 / static_cast<double>(segment), 0.25};
}

PowerLawFit fit_power_law(const PsdEstimate& psd, FrequencyBand band) {
  if (!(band.lo < band.hi) || band.lo <= 0.0) {
    throw Error(ErrorCode::BandTooNarrow, "band must satisfy 0 < lo < hi");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < psd.freqs.size(); ++i) {
    const double f = psd.freqs[i];
    if (f >= band.lo && f <= band.hi && psd.power[i] > 0.0) {
      lx.push_back(std::log(f));
      ly.push_back(std::log(psd.power[i]));
    }
  }
  if (lx.size() < 8) {
    throw Error(ErrorCode::BandTooNarrow,
                "only " + std::to_string(lx.size()) + " frequency bins inside the band");
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  PowerLawFit fit;
  fit.alpha = -slope;
  fit.intercept = my - slope * mx;
  fit.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.band = band;
  fit.points = lx.size();
  return fit;
}

PowerLawFit fit_power_law(const PsdEstimate& psd) {
  return fit_power_law(psd, default_band(psd.segment));
}

std::string to_json(const PowerLawFit& fit) {
  nlohmann::json j;
  j["alpha"] = fit.alpha;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["band"] = {fit.band.lo, fit.band.hi};
  return j.dump();
}

}  // namespace noiseplane
