#include "noiseplane/ordinal.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "json.hpp"

#include "noiseplane/complexity.hpp"
#include "noiseplane/error.hpp"

namespace noiseplane {

namespace {

void validate(const OrdinalConfig& config) {
  if (config.d < 2 || config.d > kMaxEmbeddingDimension) {
    throw Error(ErrorCode::InvalidArgument,
                "embedding dimension must be in [2, " +
                    std::to_string(kMaxEmbeddingDimension) + "], got " +
                    std::to_string(config.d));
  }
  if (config.tau < 1) {
    throw Error(ErrorCode::InvalidArgument, "embedding delay must be >= 1");
  }
}

}  // namespace

std::uint64_t factorial(int d) {
  if (d < 0 || d > 20) throw Error(ErrorCode::InvalidArgument, "factorial out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= d; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

int default_embedding_dimension(Window window) noexcept {
  switch (window) {
    case Window::OneYear:
    case Window::SixMonths:
      return 4;
    case Window::ThreeYears:
    case Window::Full:
      return 5;
  }
  return 5;
}

OrdinalDistribution::OrdinalDistribution(OrdinalConfig config,
                                         std::vector<std::uint64_t> counts)
    : config_(config), counts_(std::move(counts)) {
  validate(config_);
  if (counts_.size() != factorial(config_.d)) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(factorial(config_.d)) + " pattern slots, got " +
                    std::to_string(counts_.size()));
  }
  for (auto c : counts_) total_ += c;
  if (total_ == 0) throw Error(ErrorCode::EmptySeries, "distribution has no patterns");
  probabilities_.resize(counts_.size());
  const double total = static_cast<double>(total_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    probabilities_[i] = static_cast<double>(counts_[i]) / total;
  }
}

std::string OrdinalDistribution::to_json() const {
  nlohmann::json j;
  j["d"] = config_.d;
  j["tau"] = config_.tau;
  j["counts"] = counts_;
  return j.dump();
}

OrdinalDistribution OrdinalDistribution::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  OrdinalConfig config;
  config.d = j.at("d").get<int>();
  config.tau = j.at("tau").get<int>();
  config.check_admissibility = false;
  return OrdinalDistribution(config, j.at("counts").get<std::vector<std::uint64_t>>());
}

std::size_t permutation_index(std::span<const int> permutation) {
  const int d = static_cast<int>(permutation.size());
  std::size_t index = 0;
  for (int i = 0; i < d; ++i) {
    std::size_t smaller = 0;
    for (int j = i + 1; j < d; ++j) {
      if (permutation[static_cast<std::size_t>(j)] < permutation[static_cast<std::size_t>(i)]) {
        ++smaller;
      }
    }
    index = index * static_cast<std::size_t>(d - i) + smaller;
  }
  return index;
}

std::vector<int> permutation_from_index(std::size_t index, int d) {
  if (d < 1 || index >= factorial(d)) {
    throw Error(ErrorCode::InvalidArgument, "pattern index out of range");
  }
  std::vector<int> digits(static_cast<std::size_t>(d));
  for (int i = d - 1; i >= 0; --i) {
    const auto radix = static_cast<std::size_t>(d - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(index % radix);
    index /= radix;
  }
  std::vector<int> pool(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> perm;
  perm.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto k = static_cast<std::size_t>(digits[static_cast<std::size_t>(i)]);
    perm.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<long>(k));
  }
  return perm;
}

std::vector<std::size_t> pattern_sequence(std::span<const double> values,
                                          const OrdinalConfig& config) {
  validate(config);
  const std::size_t d = static_cast<std::size_t>(config.d);
  const std::size_t tau = static_cast<std::size_t>(config.tau);
  const std::size_t span = (d - 1) * tau;
  if (values.size() <= span) {
    throw Error(ErrorCode::SeriesTooShort,
                "series of length " + std::to_string(values.size()) +
                    " has no embedding window for d=" + std::to_string(d) +
                    ", tau=" + std::to_string(tau));
  }
  const std::size_t windows = values.size() - span;
  std::vector<std::size_t> out(windows);

  // Insertion-sort the d positions of each window, then read off the Lehmer
  // digits of the sorting permutation.
  std::array<int, kMaxEmbeddingDimension> perm{};
  for (std::size_t w = 0; w < windows; ++w) {
    const double* base = values.data() + w;
    std::size_t len = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const double v = base[k * tau];
      std::size_t pos = len;
      // strict > keeps equal values in positional order
      while (pos > 0 && base[static_cast<std::size_t>(perm[pos - 1]) * tau] > v) {
        perm[pos] = perm[pos - 1];
        --pos;
      }
      perm[pos] = static_cast<int>(k);
      ++len;
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < d; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
      index = index * (d - i) + smaller;
    }
    out[w] = index;
  }
  return out;
}

OrdinalDistribution extract_patterns(std::span<const double> values,
                                     const OrdinalConfig& config) {
  validate(config);
  const std::uint64_t slots = factorial(config.d);
  if (config.check_admissibility && values.size() < 5 * slots) {
    throw Error(ErrorCode::AdmissibilityViolated,
                "series of length " + std::to_string(values.size()) + " is below 5*" +
                    std::to_string(config.d) + "! = " + std::to_string(5 * slots));
  }
  std::vector<std::uint64_t> counts(slots, 0);
  for (std::size_t idx : pattern_sequence(values, config)) ++counts[idx];
  return OrdinalDistribution(config, std::move(counts));
}

OrdinalDistribution extract_patterns(const TimeSeries& series, const OrdinalConfig& config) {
  return extract_patterns(series.values(), config);
}

double permutation_entropy(const OrdinalDistribution& dist, bool normalized) {
  const double s = shannon_entropy(dist.probabilities());
  if (!normalized) return s;
  return std::clamp(s / std::log(static_cast<double>(dist.states())), 0.0, 1.0);
}

}  // namespace noiseplane
