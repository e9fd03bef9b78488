// SPDX-License-Identifier: MIT
#include "ratemig/field.hpp"

#include <string>
#include <utility>

#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"

namespace ratemig {

SolutionField::SolutionField(std::shared_ptr<const Mesh> mesh, std::vector<double> coefficients,
                             double time_stamp)
    : mesh_(std::move(mesh)), coefficients_(std::move(coefficients)), time_stamp_(time_stamp) {
  if (!mesh_) throw InvalidParameterError("solution field requires a mesh");
  if (static_cast<int>(coefficients_.size()) != mesh_->dof_count())
    throw InconsistentInputError("coefficient count " + std::to_string(coefficients_.size()) +
                                 " does not match mesh with " +
                                 std::to_string(mesh_->dof_count()) + " nodes");
}

double SolutionField::value_at(double x) const {
  const int e = mesh_->locate_element(x);
  const auto [a, b] = mesh_->element_span(e);
  const auto basis = reference_basis(mesh_->order(), 2.0 * (x - a) / (b - a) - 1.0);
  const int base = mesh_->first_dof(e);
  double value = 0.0;
  for (int k = 0; k < basis.count(); ++k) value += coefficients_[base + k] * basis.values[k];
  return value;
}

double SolutionField::derivative_at(double x) const {
  const int e = mesh_->locate_element(x);
  const auto [a, b] = mesh_->element_span(e);
  const auto basis = reference_basis(mesh_->order(), 2.0 * (x - a) / (b - a) - 1.0);
  const int base = mesh_->first_dof(e);
  double deriv = 0.0;
  for (int k = 0; k < basis.count(); ++k) deriv += coefficients_[base + k] * basis.derivatives[k];
  return deriv * 2.0 / (b - a);  // chain rule of the parent map
}

double evaluate_solution(const SolutionField& field, double x) { return field.value_at(x); }

}  // namespace ratemig
