// SPDX-License-Identifier: MIT
#include "ratemig/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"

namespace ratemig {

ReferenceFunction field_reference(const SolutionField& field) {
  return {[&field](double x) { return field.value_at(x); },
          [&field](double x) { return field.derivative_at(x); }};
}

ReferenceFunction fd_reference(const FDGrid& grid, int level) {
  return {[&grid, level](double x) { return grid.value_at(level, x); },
          [&grid, level](double x) { return grid.derivative_at(level, x); }};
}

ErrorReport error_norms(const SolutionField& field, const ReferenceFunction& reference,
                        const QuadratureRule& quadrature) {
  if (!reference.value || !reference.derivative)
    throw InvalidParameterError("reference function has empty callables");
  const Mesh& mesh = field.mesh();
  const int order = mesh.order();
  const auto coeffs = field.coefficients();

  std::vector<BasisValues> tab;
  tab.reserve(quadrature.size());
  for (double xi : quadrature.points) tab.push_back(reference_basis(order, xi));

  double l2_sq = 0.0, semi_sq = 0.0, linf = 0.0;
  try {
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const auto [a, b] = mesh.element_span(e);
      const double jac = 0.5 * (b - a);
      const double jac_inv = 1.0 / jac;
      const int base = mesh.first_dof(e);
      for (int q = 0; q < quadrature.size(); ++q) {
        const auto& bv = tab[q];
        double u = 0.0, ux = 0.0;
        for (int k = 0; k <= order; ++k) {
          u += coeffs[base + k] * bv.values[k];
          ux += coeffs[base + k] * bv.derivatives[k];
        }
        ux *= jac_inv;
        const double x = a + jac * (quadrature.points[q] + 1.0);
        const double dv = u - reference.value(x);
        const double dd = ux - reference.derivative(x);
        const double w = quadrature.weights[q] * jac;
        l2_sq += w * dv * dv;
        semi_sq += w * dd * dd;
        linf = std::max(linf, std::abs(dv));
      }
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      linf = std::max(linf, std::abs(coeffs[i] - reference.value(mesh.node_coords()[i])));
  } catch (const DomainError& err) {
    throw InconsistentInputError(std::string("reference not evaluable on the field's window: ") +
                                 err.what());
  }

  ErrorReport report;
  report.l2 = std::sqrt(l2_sq);
  report.h1 = std::sqrt(l2_sq + semi_sq);
  report.linf = linf;
  return report;
}

double l2_norm(const SolutionField& field, const QuadratureRule& quadrature) {
  const Mesh& mesh = field.mesh();
  const int order = mesh.order();
  const auto coeffs = field.coefficients();
  std::vector<BasisValues> tab;
  tab.reserve(quadrature.size());
  for (double xi : quadrature.points) tab.push_back(reference_basis(order, xi));

  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto [a, b] = mesh.element_span(e);
    const double jac = 0.5 * (b - a);
    const int base = mesh.first_dof(e);
    for (int q = 0; q < quadrature.size(); ++q) {
      double u = 0.0;
      for (int k = 0; k <= order; ++k) u += coeffs[base + k] * tab[q].values[k];
      acc += quadrature.weights[q] * jac * u * u;
    }
  }
  return std::sqrt(acc);
}

}  // namespace ratemig
