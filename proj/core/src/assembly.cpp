// SPDX-License-Identifier: MIT
#include "ratemig/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"

namespace ratemig {

namespace {

std::vector<BasisValues> tabulate_basis(int order, const QuadratureRule& rule) {
  std::vector<BasisValues> tab;
  tab.reserve(rule.size());
  for (double xi : rule.points) tab.push_back(reference_basis(order, xi));
  return tab;
}

void require_exactness(const QuadratureRule& rule, int order, const char* what) {
  if (rule.exact_degree() < 2 * order)
    throw ConfigError(std::string(what) + " needs a rule exact to degree " +
                      std::to_string(2 * order) + ", got degree " +
                      std::to_string(rule.exact_degree()));
}

}  // namespace

QuadratureRule default_assembly_rule(int order) { return gauss_rule(order + 1); }

BandedMatrix assemble_mass(const Mesh& mesh, const QuadratureRule& quadrature) {
  require_exactness(quadrature, mesh.order(), "mass assembly");
  const int order = mesh.order();
  const auto tab = tabulate_basis(order, quadrature);

  BandedMatrix mass(mesh.dof_count(), order, order);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto [a, b] = mesh.element_span(e);
    const double jac = 0.5 * (b - a);
    const int base = mesh.first_dof(e);
    for (int q = 0; q < quadrature.size(); ++q) {
      const double wj = quadrature.weights[q] * jac;
      const auto& bv = tab[q];
      for (int i = 0; i <= order; ++i)
        for (int j = 0; j <= order; ++j)
          mass.add(base + i, base + j, wj * bv.values[i] * bv.values[j]);
    }
  }
  return mass;
}

namespace {

// Accumulates the operator rows of elements [first, last) into out.  Each
// element block is summed over quadrature points locally and committed with
// one add per entry, so a band entry always sees exactly one addition per
// touching element, in ascending element order.  That makes the threaded
// block reduction below reproduce the serial result bit for bit.
void assemble_operator_range(const Mesh& mesh, const SolutionField& u_prev, double threshold,
                             const ModelParams& params, const QuadratureRule& quadrature,
                             const std::vector<BasisValues>& tab, const OperatorOptions& options,
                             int first, int last, BandedMatrix& out) {
  const int order = mesh.order();
  const auto coeffs = u_prev.coefficients();
  const double sigma_jump = params.sigma_low_grade - params.sigma_high_grade;
  std::array<std::array<double, kMaxElementOrder + 1>, kMaxElementOrder + 1> block;
  for (int e = first; e < last; ++e) {
    const auto [a, b] = mesh.element_span(e);
    const double jac = 0.5 * (b - a);
    const double jac_inv = 1.0 / jac;
    const int base = mesh.first_dof(e);
    for (int i = 0; i <= order; ++i) block[i].fill(0.0);
    for (int q = 0; q < quadrature.size(); ++q) {
      const auto& bv = tab[q];
      double u_val = 0.0, u_x = 0.0;
      for (int k = 0; k <= order; ++k) {
        u_val += coeffs[base + k] * bv.values[k];
        u_x += coeffs[base + k] * bv.derivatives[k];
      }
      u_x *= jac_inv;
      const double gap = u_val - threshold;
      const double sigma = volatility_for_gap(gap, params);
      const double half_sigma2 = 0.5 * sigma * sigma;
      // Integrating sigma^2/2 u_xx by parts leaves -(d(sigma^2)/dx / 2) u_x
      // behind; folding it into the convection keeps the assembled march on
      // the non-divergence operator when sigma varies across the element.
      const double half_dsigma2_dx =
          sigma * sigma_jump * smoothed_heaviside_deriv(gap, params.epsilon) * u_x;
      const double convection =
          params.rate + options.convection_sign * half_sigma2 - half_dsigma2_dx;
      const double w = quadrature.weights[q];
      for (int i = 0; i <= order; ++i) {
        for (int j = 0; j <= order; ++j) {
          const double diffusion = half_sigma2 * bv.derivatives[j] * bv.derivatives[i] * jac_inv;
          const double drift = -convection * bv.derivatives[j] * bv.values[i];
          const double reaction =
              options.reaction_coefficient * bv.values[j] * bv.values[i] * jac;
          block[i][j] += w * (diffusion + drift + reaction);
        }
      }
    }
    for (int i = 0; i <= order; ++i)
      for (int j = 0; j <= order; ++j) out.add(base + i, base + j, block[i][j]);
  }
}

}  // namespace

BandedMatrix assemble_operator(const Mesh& mesh, const SolutionField& u_prev, double t,
                               const ModelParams& params, const QuadratureRule& quadrature,
                               const OperatorOptions& options, int n_threads) {
  require_exactness(quadrature, mesh.order(), "operator assembly");
  if (&u_prev.mesh() != &mesh && !(u_prev.mesh() == mesh))
    throw InconsistentInputError("previous-step field lives on a different mesh");
  if (t < 0.0) throw DomainError("operator requested at negative time " + std::to_string(t));
  params.validate();

  const auto tab = tabulate_basis(mesh.order(), quadrature);
  const double threshold = params.gamma * std::exp(-params.delta * t);
  const int ne = mesh.n_elements();

  BandedMatrix out(mesh.dof_count(), mesh.order(), mesh.order());
  n_threads = std::clamp(n_threads, 1, ne);
  if (n_threads == 1) {
    assemble_operator_range(mesh, u_prev, threshold, params, quadrature, tab, options, 0, ne, out);
    return out;
  }

  // Contiguous element ranges with per-thread accumulators, reduced in range
  // order: every band entry receives its per-element contributions in
  // ascending element order, exactly as the serial loop.
  std::vector<BandedMatrix> partial(n_threads, BandedMatrix(mesh.dof_count(), mesh.order(),
                                                            mesh.order()));
  std::vector<std::exception_ptr> failures(n_threads);
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w) {
    const int first = static_cast<int>(static_cast<long long>(ne) * w / n_threads);
    const int last = static_cast<int>(static_cast<long long>(ne) * (w + 1) / n_threads);
    workers.emplace_back([&, w, first, last] {
      try {
        assemble_operator_range(mesh, u_prev, threshold, params, quadrature, tab, options, first,
                                last, partial[w]);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
  for (auto& part : partial) out.add_scaled(part, 1.0);
  return out;
}

}  // namespace ratemig
