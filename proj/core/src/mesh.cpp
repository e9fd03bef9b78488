// SPDX-License-Identifier: MIT
#include "ratemig/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"

namespace ratemig {

Mesh::Mesh(std::vector<double> breakpoints, int order)
    : breakpoints_(std::move(breakpoints)), order_(order) {
  if (order_ < 1 || order_ > kMaxElementOrder)
    throw InvalidParameterError("element order must lie in [1, " +
                                std::to_string(kMaxElementOrder) + "], got " +
                                std::to_string(order_));
  if (breakpoints_.size() < 2)
    throw InvalidParameterError("mesh needs at least one element (two breakpoints)");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw InvalidParameterError("mesh breakpoints must increase strictly near index " +
                                  std::to_string(i));

  const int ne = n_elements();
  nodes_.resize(static_cast<std::size_t>(ne) * order_ + 1);
  max_width_ = 0.0;
  for (int e = 0; e < ne; ++e) {
    const double a = breakpoints_[e], b = breakpoints_[e + 1];
    max_width_ = std::max(max_width_, b - a);
    for (int k = 0; k <= order_; ++k)
      nodes_[static_cast<std::size_t>(first_dof(e)) + k] = a + (b - a) * k / order_;
  }
  // Shared nodes are written twice; make breakpoint nodes exact.
  for (int e = 0; e <= ne; ++e) nodes_[static_cast<std::size_t>(e) * order_] = breakpoints_[e];
}

std::pair<double, double> Mesh::element_span(int e) const {
  if (e < 0 || e >= n_elements())
    throw DomainError("element index " + std::to_string(e) + " outside [0, " +
                      std::to_string(n_elements() - 1) + "]");
  return {breakpoints_[e], breakpoints_[e + 1]};
}

int Mesh::locate_element(double x) const {
  const double slack = 1e-12 * (x_max() - x_min());
  if (x < x_min() - slack || x > x_max() + slack)
    throw DomainError("coordinate " + std::to_string(x) + " outside mesh window [" +
                      std::to_string(x_min()) + ", " + std::to_string(x_max()) + "]");
  x = std::fmin(x_max(), std::fmax(x_min(), x));
  // First breakpoint strictly greater than x; x == breakpoint goes right.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  int e = static_cast<int>(it - breakpoints_.begin()) - 1;
  return std::clamp(e, 0, n_elements() - 1);
}

Mesh build_mesh(double x_min, double x_max, int n_elements, int order) {
  if (!(x_min < x_max))
    throw InvalidParameterError("mesh window requires x_min < x_max, got [" +
                                std::to_string(x_min) + ", " + std::to_string(x_max) + "]");
  if (n_elements < 1)
    throw InvalidParameterError("n_elements must be at least 1, got " +
                                std::to_string(n_elements));

  std::vector<double> breakpoints(static_cast<std::size_t>(n_elements) + 1);
  const double h = (x_max - x_min) / n_elements;
  for (int e = 0; e <= n_elements; ++e) breakpoints[e] = x_min + h * e;
  breakpoints.front() = x_min;
  breakpoints.back() = x_max;

  // Pin the kink of the initial profile to a node: snap the breakpoint
  // nearest to 0 when 0 sits strictly inside the window.
  if (x_min < 0.0 && 0.0 < x_max) {
    auto it = std::min_element(breakpoints.begin(), breakpoints.end(),
                               [](double a, double b) { return std::abs(a) < std::abs(b); });
    const int idx = static_cast<int>(it - breakpoints.begin());
    if (idx > 0 && idx < n_elements) *it = 0.0;
  }
  return Mesh(std::move(breakpoints), order);
}

Mesh build_mesh(std::vector<double> breakpoints, int order) {
  return Mesh(std::move(breakpoints), order);
}

}  // namespace ratemig
