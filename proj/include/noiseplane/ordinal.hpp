#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noiseplane/timeseries.hpp"

namespace noiseplane {

inline constexpr int kMaxEmbeddingDimension = 10;

struct OrdinalConfig {
  int d = 4;          ///< embedding dimension, 2..10
  int tau = 1;        ///< embedding delay
  /// Require n >= 5 d!; disable for short synthetic inputs.
  bool check_admissibility = true;
};

/// d! for 0 <= d <= kMaxEmbeddingDimension.
std::uint64_t factorial(int d);

/// Default embedding dimension per training window: 5 for three years (and the
/// full range), 4 for one year and six months.
int default_embedding_dimension(Window window) noexcept;

/// Ordinal-pattern histogram over all d! permutations, indexed in Lehmer
/// (lexicographic) order. Zero-count slots are kept.
class OrdinalDistribution {
 public:
  OrdinalDistribution(OrdinalConfig config, std::vector<std::uint64_t> counts);

  const OrdinalConfig& config() const noexcept { return config_; }
  int dimension() const noexcept { return config_.d; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::span<const double> probabilities() const noexcept { return probabilities_; }
  std::size_t states() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }

  std::string to_json() const;
  static OrdinalDistribution from_json(const std::string& text);

 private:
  OrdinalConfig config_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> probabilities_;
  std::uint64_t total_ = 0;
};

/// Lehmer index of a permutation of {0..d-1}; the identity maps to 0 and the
/// reversal to d!-1.
std::size_t permutation_index(std::span<const int> permutation);
std::vector<int> permutation_from_index(std::size_t index, int d);

/// Pattern index of every embedding window: window i covers
/// x[i], x[i+tau], ..., x[i+(d-1)tau] and maps to the permutation that sorts it
/// ascending, ties resolved so the earlier position ranks lower.
std::vector<std::size_t> pattern_sequence(std::span<const double> values,
                                          const OrdinalConfig& config);

/// Throws SeriesTooShort when no window fits and AdmissibilityViolated when
/// n < 5 d! with the check enabled.
OrdinalDistribution extract_patterns(std::span<const double> values,
                                     const OrdinalConfig& config);
OrdinalDistribution extract_patterns(const TimeSeries& series, const OrdinalConfig& config);

/// Shannon entropy (natural log) of the pattern distribution, optionally
/// divided by ln d!.
double permutation_entropy(const OrdinalDistribution& dist, bool normalized = true);

}  // namespace noiseplane
