// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ratemig/mesh.hpp"

namespace ratemig {

/// A finite element function: nodal coefficients over a shared mesh plus the
/// time level it belongs to.  Coefficient i multiplies the global Lagrange
/// shape that is 1 at node i.
class SolutionField {
 public:
  SolutionField(std::shared_ptr<const Mesh> mesh, std::vector<double> coefficients,
                double time_stamp);

  /// Nodal interpolant of f at every mesh node.
  template <class F>
  static SolutionField interpolate(std::shared_ptr<const Mesh> mesh, F&& f, double time_stamp) {
    std::vector<double> coeffs(mesh->node_coords().size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = f(mesh->node_coords()[i]);
    return SolutionField(std::move(mesh), std::move(coeffs), time_stamp);
  }

  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  double time_stamp() const noexcept { return time_stamp_; }

  std::span<const double> coefficients() const noexcept { return coefficients_; }
  std::vector<double> take_coefficients() && { return std::move(coefficients_); }

  /// Point value of the piecewise polynomial.  Exactly reproduces the
  /// coefficient at a node; throws DomainError outside the window.
  double value_at(double x) const;

  /// Spatial derivative of the piecewise polynomial at x (one-sided limits
  /// coincide only for smooth data; element-interior evaluation is exact).
  double derivative_at(double x) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<double> coefficients_;
  double time_stamp_;
};

/// Point evaluation of a finite element function.
double evaluate_solution(const SolutionField& field, double x);

}  // namespace ratemig
