#include "noiseplane/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noiseplane/error.hpp"

namespace noiseplane {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_same_space(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, "distributions over " + std::to_string(a) +
                                                  " and " + std::to_string(b) + " states");
  }
}

void require_same_space(const OrdinalDistribution& p, const OrdinalDistribution& q) {
  if (p.dimension() != q.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "embedding dimensions " + std::to_string(p.dimension()) + " and " +
                    std::to_string(q.dimension()));
  }
}

// Entropy of one outcome at probability `p` plus `rest` outcomes sharing 1-p.
double family_entropy(double p, std::size_t rest) {
  if (rest == 0) return 0.0;
  const double share = (1.0 - p) / static_cast<double>(rest);
  return -xlogx(p) - static_cast<double>(rest) * xlogx(share);
}

double family_complexity(double p, std::size_t rest, std::size_t states) {
  std::vector<double> dist(states, 0.0);
  dist[0] = p;
  const double share = rest == 0 ? 0.0 : (1.0 - p) / static_cast<double>(rest);
  for (std::size_t i = 1; i <= rest; ++i) dist[i] = share;
  return statistical_complexity(dist).c;
}

// Bisection for p in [lo, hi] such that family_entropy(p, rest) == target,
// assuming the entropy is monotone across the bracket.
double solve_family(double target, std::size_t rest, double lo, double hi) {
  const bool increasing = family_entropy(hi, rest) > family_entropy(lo, rest);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double s = family_entropy(mid, rest);
    if ((s < target) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s -= xlogx(v);
  return s;
}

double js_divergence(std::span<const double> p, std::span<const double> q) {
  require_same_space(p.size(), q.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = p[i];
    const double b = q[i];
    const double m = a + b;
    if (m <= 0.0) continue;
    double term = 0.0;
    if (a > 0.0) term += a * std::log(2.0 * a / m);
    if (b > 0.0) term += b * std::log(2.0 * b / m);
    sum += term;
  }
  return std::clamp(0.5 * sum, 0.0, std::numbers::ln2);
}

double js_divergence(const OrdinalDistribution& p, const OrdinalDistribution& q) {
  require_same_space(p, q);
  return js_divergence(p.probabilities(), q.probabilities());
}

double max_js_divergence(std::size_t states) {
  if (states < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 states");
  const double n = static_cast<double>(states);
  return -0.5 * (((n + 1.0) / n) * std::log(n + 1.0) - 2.0 * std::log(2.0 * n) + std::log(n));
}

CHPoint statistical_complexity(std::span<const double> p) {
  const std::size_t n = p.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 states");
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  const double h = std::clamp(shannon_entropy(p) / std::log(static_cast<double>(n)), 0.0, 1.0);
  const double q = std::clamp(js_divergence(p, uniform) / max_js_divergence(n), 0.0, 1.0);
  return {h, std::clamp(q * h, 0.0, 1.0)};
}

CHPoint statistical_complexity(const OrdinalDistribution& p) {
  return statistical_complexity(p.probabilities());
}

double pjsd(std::span<const double> p, std::span<const double> q) {
  return std::clamp(std::sqrt(js_divergence(p, q) / std::numbers::ln2), 0.0, 1.0);
}

double pjsd(const OrdinalDistribution& p, const OrdinalDistribution& q) {
  require_same_space(p, q);
  return pjsd(p.probabilities(), q.probabilities());
}

ComplexityBounds complexity_bounds_at(double h, std::size_t states) {
  if (states < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 states");
  h = std::clamp(h, 0.0, 1.0);
  if (h <= 0.0 || h >= 1.0) return {0.0, 0.0};
  const double target = h * std::log(static_cast<double>(states));

  // Lower envelope: p in [1/N, 1] with the rest uniform; entropy decreases in p.
  const double p_min =
      solve_family(target, states - 1, 1.0 / static_cast<double>(states), 1.0);
  const double lower = family_complexity(p_min, states - 1, states);

  // Upper envelope: m nonzero outcomes, p in [0, 1/m]; entropy rises from
  // ln(m-1) to ln(m), so the family covering `target` is unique.
  std::size_t m = 2;
  while (m < states && std::log(static_cast<double>(m)) < target) ++m;
  const double p_max = solve_family(target, m - 1, 0.0, 1.0 / static_cast<double>(m));
  const double upper = family_complexity(p_max, m - 1, states);
  return {lower, std::max(upper, lower)};
}

std::pair<BoundaryCurve, BoundaryCurve> ch_boundaries(int d, std::size_t resolution) {
  if (d < 2 || d > kMaxEmbeddingDimension) {
    throw Error(ErrorCode::InvalidArgument, "embedding dimension out of range");
  }
  if (resolution < 16) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 16");
  const auto states = static_cast<std::size_t>(factorial(d));
  BoundaryCurve lower{BoundaryKind::Min, {}};
  BoundaryCurve upper{BoundaryKind::Max, {}};
  lower.points.reserve(resolution);
  upper.points.reserve(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double h = static_cast<double>(i) / static_cast<double>(resolution - 1);
    const auto bounds = complexity_bounds_at(h, states);
    lower.points.push_back({h, bounds.lower});
    upper.points.push_back({h, bounds.upper});
  }
  return {std::move(lower), std::move(upper)};
}

}  // namespace noiseplane
