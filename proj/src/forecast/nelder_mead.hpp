#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace noiseplane::detail {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex minimisation (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). Stops when the spread of function values
/// falls below `ftol` or after `max_iter` iterations.
template <std::size_t N>
SimplexResult<N> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                             std::array<double, N> start, double step, double ftol = 1e-12,
                             int max_iter = 500) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> simplex;
  std::array<double, N + 1> values;
  simplex[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= N; ++i) values[i] = f(simplex[i]);

  auto combine = [](const Point& a, const Point& b, double t) {
    Point out;
    for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::array<std::size_t, N + 1> order;
    for (std::size_t i = 0; i <= N; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::array<Point, N + 1> s2;
    std::array<double, N + 1> v2;
    for (std::size_t i = 0; i <= N; ++i) {
      s2[i] = simplex[order[i]];
      v2[i] = values[order[i]];
    }
    simplex = s2;
    values = v2;
    if (std::abs(values[N] - values[0]) <= ftol * (std::abs(values[0]) + ftol)) break;

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) centroid[k] += simplex[i][k] / static_cast<double>(N);
    }
    const Point reflected = combine(centroid, simplex[N], -1.0);
    const double fr = f(reflected);
    if (fr < values[0]) {
      const Point expanded = combine(centroid, simplex[N], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[N] = expanded;
        values[N] = fe;
      } else {
        simplex[N] = reflected;
        values[N] = fr;
      }
      continue;
    }
    if (fr < values[N - 1]) {
      simplex[N] = reflected;
      values[N] = fr;
      continue;
    }
    const bool outside = fr < values[N];
    const Point contracted = outside ? combine(centroid, reflected, 0.5)
                                     : combine(centroid, simplex[N], 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, values[N])) {
      simplex[N] = contracted;
      values[N] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= N; ++i) {
      simplex[i] = combine(simplex[0], simplex[i], 0.5);
      values[i] = f(simplex[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= N; ++i) {
    if (values[i] < values[best]) best = i;
  }
  return {simplex[best], values[best], iter};
}

}  // namespace noiseplane::detail
