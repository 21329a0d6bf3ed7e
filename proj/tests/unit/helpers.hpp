#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "chemotaxis/grid.hpp"

namespace testing {

inline double ulp_distance(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) / (std::numeric_limits<double>::epsilon() * scale);
}

inline double max_abs_diff(const chemotaxis::Field& a, const chemotaxis::Field& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

inline chemotaxis::Field random_field(const chemotaxis::Grid& g, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  chemotaxis::Field f(g);
  for (double& x : f.values()) x = dist(rng);
  return f;
}

/// Smooth positive field: level plus a few random cosine modes.
inline chemotaxis::Field smooth_positive(const chemotaxis::Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-0.3, 0.3);
  const double pi = 3.14159265358979323846;
  const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
  const double lx = g.domain().lengths[0], ly = g.domain().lengths[1];
  return chemotaxis::Field::from_function(g, [&](double x, double y) {
    double val = 1.0 + a1 * std::cos(pi * x / lx) + a2 * std::cos(3 * pi * x / lx);
    if (g.dim() == 2) val += a3 * std::cos(2 * pi * y / ly);
    return val;
  });
}

/// Dense Gaussian elimination with partial pivoting (row-major A, n×n).
inline std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
    x[r] = s / a[r * n + r];
  }
  return x;
}

/// Matrix of μI − L_h assembled from the explicit three/five-point mirror-ghost stencil.
inline std::vector<double> shifted_laplacian_matrix(const chemotaxis::Grid& g, double mu) {
  const std::size_t n = g.size();
  std::vector<double> a(n * n, 0.0);
  auto add = [&](std::size_t r, std::size_t c, double v) { a[r * n + c] += v; };
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t r = g.index(i, j);
      add(r, r, mu);
      const double cx = 1.0 / (g.hx() * g.hx());
      if (i > 0) { add(r, r, cx); add(r, g.index(i - 1, j), -cx); }
      if (i + 1 < g.nx()) { add(r, r, cx); add(r, g.index(i + 1, j), -cx); }
      if (g.dim() == 2) {
        const double cy = 1.0 / (g.hy() * g.hy());
        if (j > 0) { add(r, r, cy); add(r, g.index(i, j - 1), -cy); }
        if (j + 1 < g.ny()) { add(r, r, cy); add(r, g.index(i, j + 1), -cy); }
      }
    }
  return a;
}

}  // namespace testing
