// SPDX-License-Identifier: MIT
#include "ratemig/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ratemig/errors.hpp"

namespace ratemig {

namespace {

// Legendre P_n and P_n' at x via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_rule(int n_points) {
  if (n_points < 1 || n_points > 10)
    throw InvalidParameterError("gauss_rule supports 1..10 points, got " +
                                std::to_string(n_points));

  QuadratureRule rule;
  rule.points.resize(n_points);
  rule.weights.resize(n_points);

  if (n_points == 1) {
    rule.points[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  const int n = n_points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess for the i-th largest root, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Fill symmetrically so the rule is exactly even about 0.
    rule.points[i] = -std::abs(x);
    rule.points[n - 1 - i] = std::abs(x);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

}  // namespace ratemig
