// SPDX-License-Identifier: MIT
#include "ratemig/basis.hpp"

#include <cmath>
#include <string>

#include "ratemig/errors.hpp"

namespace ratemig {

double reference_node(int order, int i) { return -1.0 + 2.0 * i / order; }

BasisValues reference_basis(int order, double xi) {
  if (order < 1 || order > kMaxElementOrder)
    throw InvalidParameterError("element order must lie in [1, " +
                                std::to_string(kMaxElementOrder) + "], got " +
                                std::to_string(order));
  // A hair of slack absorbs roundoff from physical-to-parent mapping.
  constexpr double slack = 1e-12;
  if (xi < -1.0 - slack || xi > 1.0 + slack)
    throw DomainError("reference coordinate " + std::to_string(xi) + " outside [-1, 1]");
  xi = std::fmin(1.0, std::fmax(-1.0, xi));

  BasisValues out;
  out.order = order;
  const int n = order + 1;
  for (int i = 0; i < n; ++i) {
    const double xi_i = reference_node(order, i);
    double value = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double xi_j = reference_node(order, j);
      value *= (xi - xi_j) / (xi_i - xi_j);
    }
    double deriv = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      const double xi_k = reference_node(order, k);
      double term = 1.0 / (xi_i - xi_k);
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double xi_j = reference_node(order, j);
        term *= (xi - xi_j) / (xi_i - xi_j);
      }
      deriv += term;
    }
    out.values[i] = value;
    out.derivatives[i] = deriv;
  }
  return out;
}

}  // namespace ratemig
