// SPDX-License-Identifier: MIT
#pragma once

#include <utility>
#include <vector>

namespace ratemig {

/// Conforming 1-D Lagrange mesh: elements between consecutive breakpoints,
/// each carrying order+1 equally spaced nodes shared with its neighbours.
/// Global node count is n_elements * order + 1 and nodes ascend strictly.
class Mesh {
 public:
  /// breakpoints must be strictly increasing with at least two entries;
  /// order must lie in [1, 4].
  Mesh(std::vector<double> breakpoints, int order);

  int n_elements() const noexcept { return static_cast<int>(breakpoints_.size()) - 1; }
  int order() const noexcept { return order_; }
  int dof_count() const noexcept { return static_cast<int>(nodes_.size()); }

  double x_min() const noexcept { return breakpoints_.front(); }
  double x_max() const noexcept { return breakpoints_.back(); }

  /// Largest element width.
  double max_width() const noexcept { return max_width_; }

  /// [left, right] endpoints of element e.
  std::pair<double, double> element_span(int e) const;

  /// Global index of the first node of element e; the element owns nodes
  /// first_dof(e) .. first_dof(e) + order.
  int first_dof(int e) const noexcept { return e * order_; }

  /// Index of the element whose closed span contains x; ties at interior
  /// breakpoints resolve to the right element.  Throws DomainError when x
  /// lies outside the window beyond roundoff slack.
  int locate_element(double x) const;

  const std::vector<double>& node_coords() const noexcept { return nodes_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  bool operator==(const Mesh&) const = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> nodes_;
  int order_;
  double max_width_;
};

/// Uniform mesh of n_elements elements on [x_min, x_max].  When 0 lies
/// strictly inside the window the nearest interior breakpoint is snapped to
/// 0 so the kink of the initial profile falls on a node; even element counts
/// on symmetric windows already satisfy this and stay exactly uniform.
Mesh build_mesh(double x_min, double x_max, int n_elements, int order);

/// Mesh over explicitly supplied breakpoints.
Mesh build_mesh(std::vector<double> breakpoints, int order);

}  // namespace ratemig
