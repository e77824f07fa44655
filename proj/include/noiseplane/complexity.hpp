#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "noiseplane/ordinal.hpp"

namespace noiseplane {

/// Coordinates in the complexity-entropy plane.
struct CHPoint {
  double h = 0.0;  ///< normalized permutation entropy
  double c = 0.0;  ///< Jensen-Shannon statistical complexity
};

enum class BoundaryKind { Min, Max };

struct BoundaryCurve {
  BoundaryKind kind = BoundaryKind::Min;
  std::vector<CHPoint> points;  ///< ordered by non-decreasing h
};

/// -sum p ln p over the nonzero entries.
double shannon_entropy(std::span<const double> p);

/// S[(P+Q)/2] - S[P]/2 - S[Q]/2, evaluated term by term as
/// sum_i (p ln(2p/(p+q)) + q ln(2q/(p+q))) / 2 so every term is non-negative
/// and the result is bit-exactly symmetric. Range [0, ln 2].
double js_divergence(std::span<const double> p, std::span<const double> q);
double js_divergence(const OrdinalDistribution& p, const OrdinalDistribution& q);

/// Divergence between a one-hot distribution and the uniform one over n states.
double max_js_divergence(std::size_t states);

CHPoint statistical_complexity(std::span<const double> p);
CHPoint statistical_complexity(const OrdinalDistribution& p);

/// sqrt(D_JS / ln 2), a metric on distributions with values in [0, 1].
double pjsd(std::span<const double> p, std::span<const double> q);
double pjsd(const OrdinalDistribution& p, const OrdinalDistribution& q);

struct ComplexityBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Minimum and maximum attainable complexity at entropy h over `states`
/// outcomes. The minimum comes from the family (p, (1-p)/(N-1), ...); the
/// maximum from the families with k zeroed outcomes, one free outcome and the
/// rest uniform.
ComplexityBounds complexity_bounds_at(double h, std::size_t states);

/// Both envelopes over d! outcomes, sampled at `resolution` entropies evenly
/// spaced over [0, 1]. resolution >= 16.
std::pair<BoundaryCurve, BoundaryCurve> ch_boundaries(int d, std::size_t resolution);

}  // namespace noiseplane
