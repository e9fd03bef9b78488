// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

namespace ratemig {

/// Quadrature rule on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> points;   ///< ascending, inside [-1, 1]
  std::vector<double> weights;  ///< positive, summing to 2

  int size() const noexcept { return static_cast<int>(points.size()); }

  /// Highest polynomial degree integrated exactly (2 n - 1 for Gauss rules).
  int exact_degree() const noexcept { return 2 * size() - 1; }
};

/// Gauss-Legendre rule with n_points in [1, 10].  Nodes are computed by
/// Newton iteration on the Legendre recurrence and are symmetric about 0.
QuadratureRule gauss_rule(int n_points);

}  // namespace ratemig
