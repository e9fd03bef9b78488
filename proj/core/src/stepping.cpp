// SPDX-License-Identifier: MIT
#include "ratemig/stepping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"
#include "ratemig/quadrature.hpp"

namespace ratemig {

TimeGrid::TimeGrid(double maturity_, int n_steps_) : maturity(maturity_), n_steps(n_steps_) {
  if (!(maturity >= 0.0))
    throw InvalidParameterError("maturity must be nonnegative, got " + std::to_string(maturity));
  if (maturity == 0.0) {
    n_steps = 0;  // empty loop: only the initial level exists
    dt = 0.0;
    return;
  }
  if (n_steps < 1)
    throw InvalidParameterError("time grid needs at least one step, got " +
                                std::to_string(n_steps_));
  dt = maturity / n_steps;
}

double TimeGrid::time_at(int n) const {
  if (n < 0 || n > n_steps)
    throw DomainError("time level " + std::to_string(n) + " outside [0, " +
                      std::to_string(n_steps) + "]");
  return n == n_steps ? maturity : dt * n;
}

BoundaryCondition default_boundary(const ModelParams& params) {
  const double left = initial_condition(params.x_min);
  const double right = initial_condition(params.x_max);
  return {[left](double) { return left; }, [right](double) { return right; }};
}

void apply_dirichlet(BandedMatrix& matrix, std::span<double> rhs, const BoundaryCondition& bc,
                     double t) {
  const int n = matrix.size();
  if (static_cast<int>(rhs.size()) != n)
    throw InconsistentInputError("rhs length " + std::to_string(rhs.size()) +
                                 " does not match system size " + std::to_string(n));
  if (!bc.left || !bc.right) throw InvalidParameterError("boundary condition has empty callables");
  const double g_left = bc.left(t);
  const double g_right = bc.right(t);

  matrix.clear_row(0);
  matrix.entry(0, 0) = 1.0;
  matrix.clear_row(n - 1);
  matrix.entry(n - 1, n - 1) = 1.0;

  // Move the known boundary columns into the rhs, then zero them so the
  // interior block no longer references the boundary nodes.
  const int ku = matrix.upper_bandwidth(), kl = matrix.lower_bandwidth();
  for (int i = 1; i <= std::min(kl, n - 2); ++i) {
    rhs[i] -= matrix.at(i, 0) * g_left;
    matrix.entry(i, 0) = 0.0;
  }
  for (int i = std::max(1, n - 1 - ku); i <= n - 2; ++i) {
    rhs[i] -= matrix.at(i, n - 1) * g_right;
    matrix.entry(i, n - 1) = 0.0;
  }
  rhs[0] = g_left;
  rhs[n - 1] = g_right;
}

namespace {

double max_abs_residual(const BandedMatrix& system, std::span<const double> x,
                        std::span<const double> rhs) {
  const auto ax = system.multiply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::abs(ax[i] - rhs[i]));
  return r;
}

double mass_l2_norm(const BandedMatrix& mass, std::span<const double> u) {
  const auto mu = mass.multiply(u);
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) acc += u[i] * mu[i];
  return std::sqrt(std::max(acc, 0.0));
}

}  // namespace

SolutionField backward_euler_step(const BandedMatrix& mass, const BandedMatrix& op,
                                  const SolutionField& u_prev, double dt,
                                  const BoundaryCondition& bc, double* residual_out) {
  if (!(dt > 0.0)) throw InvalidParameterError("step size must be positive, got " +
                                               std::to_string(dt));
  if (mass.size() != op.size() || mass.size() != static_cast<int>(u_prev.coefficients().size()))
    throw InconsistentInputError("mass, operator and field sizes disagree");

  const double t_next = u_prev.time_stamp() + dt;
  BandedMatrix system = mass;
  system.add_scaled(op, dt);
  std::vector<double> rhs = mass.multiply(u_prev.coefficients());
  apply_dirichlet(system, rhs, bc, t_next);

  std::vector<double> u_next = solve_banded(system, rhs);
  if (residual_out) *residual_out = max_abs_residual(system, u_next, rhs);
  return SolutionField(u_prev.mesh_ptr(), std::move(u_next), t_next);
}

namespace {

struct SigmaStats {
  double sigma_min = std::numeric_limits<double>::infinity();
  double sigma_max = -std::numeric_limits<double>::infinity();
  double summand_min = std::numeric_limits<double>::infinity();
};

// Samples sigma and the stability summand sigma^2 - d(sigma^2)/dx of a field
// at the quadrature points; optionally accumulates the summand per point.
SigmaStats sigma_field_stats(const SolutionField& field, double t, const ModelParams& params,
                             const QuadratureRule& rule, std::vector<double>* accumulate,
                             double* running_min) {
  const Mesh& mesh = field.mesh();
  const int order = mesh.order();
  const double threshold = params.gamma * std::exp(-params.delta * t);
  const double sigma_jump = params.sigma_low_grade - params.sigma_high_grade;
  const auto coeffs = field.coefficients();

  std::vector<BasisValues> tab;
  tab.reserve(rule.size());
  for (double xi : rule.points) tab.push_back(reference_basis(order, xi));

  SigmaStats stats;
  double run_min = std::numeric_limits<double>::infinity();
  std::size_t point = 0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto [a, b] = mesh.element_span(e);
    const double jac_inv = 2.0 / (b - a);
    const int base = mesh.first_dof(e);
    for (int q = 0; q < rule.size(); ++q, ++point) {
      const auto& bv = tab[q];
      double u_val = 0.0, u_x = 0.0;
      for (int k = 0; k <= order; ++k) {
        u_val += coeffs[base + k] * bv.values[k];
        u_x += coeffs[base + k] * bv.derivatives[k];
      }
      u_x *= jac_inv;
      const double gap = u_val - threshold;
      const double sigma = volatility_for_gap(gap, params);
      // d(sigma^2)/dx = 2 sigma sigma_u u_x with sigma_u the smoothed jump.
      const double sigma_x = sigma_jump * smoothed_heaviside_deriv(gap, params.epsilon) * u_x;
      const double summand = sigma * sigma - 2.0 * sigma * sigma_x;
      stats.sigma_min = std::min(stats.sigma_min, sigma);
      stats.sigma_max = std::max(stats.sigma_max, sigma);
      stats.summand_min = std::min(stats.summand_min, summand);
      if (accumulate) {
        (*accumulate)[point] += summand;
        run_min = std::min(run_min, (*accumulate)[point]);
      }
    }
  }
  if (running_min) *running_min = run_min;
  return stats;
}

}  // namespace

SolutionHistory run_solver(const ModelParams& params, std::shared_ptr<const Mesh> mesh,
                           const TimeGrid& grid, const BoundaryCondition& bc,
                           const SolverOptions& options) {
  params.validate();
  if (!mesh) throw InvalidParameterError("run_solver requires a mesh");
  if (std::abs(mesh->x_min() - params.x_min) > 1e-12 * (params.x_max - params.x_min) ||
      std::abs(mesh->x_max() - params.x_max) > 1e-12 * (params.x_max - params.x_min))
    throw InconsistentInputError("mesh window does not match the model window");

  const int q_points = options.quadrature_points > 0 ? options.quadrature_points
                                                     : mesh->order() + 1;
  const QuadratureRule rule = gauss_rule(q_points);
  const BandedMatrix mass = assemble_mass(*mesh, rule);

  SolutionHistory history;
  history.bc = bc;
  history.dt = grid.dt;
  history.quadrature_points = q_points;
  history.op_options = options.op_options;
  history.fields.reserve(grid.n_steps + 1);
  history.diagnostics.reserve(grid.n_steps);
  history.fields.push_back(
      SolutionField::interpolate(mesh, [](double x) { return initial_condition(x); }, 0.0));

  for (int n = 1; n <= grid.n_steps; ++n) {
    const double t_prev = grid.time_at(n - 1);
    const SolutionField& u_prev = history.fields.back();
    try {
      const BandedMatrix op = assemble_operator(*mesh, u_prev, t_prev, params, rule,
                                                options.op_options, options.n_threads);
      StepDiagnostics diag;
      SolutionField u_next = backward_euler_step(mass, op, u_prev, grid.dt, bc,
                                                 &diag.linear_residual);
      const SigmaStats stats = sigma_field_stats(u_prev, t_prev, params, rule, nullptr, nullptr);
      diag.time = u_next.time_stamp();
      diag.sigma_min = stats.sigma_min;
      diag.sigma_max = stats.sigma_max;
      diag.summand_min = stats.summand_min;
      diag.l2_norm = mass_l2_norm(mass, u_next.coefficients());
      history.diagnostics.push_back(diag);
      history.fields.push_back(std::move(u_next));
    } catch (const SingularSystemError& err) {
      throw SingularSystemError("time step " + std::to_string(n) + " (t = " +
                                std::to_string(grid.time_at(n)) + "): " + err.what());
    }
  }
  return history;
}

StabilityReport stability_diagnostic(const SolutionHistory& history, const ModelParams& params) {
  if (history.fields.empty()) throw InvalidParameterError("history holds no solution levels");
  params.validate();

  const Mesh& mesh = history.fields.front().mesh();
  const int q_points = history.quadrature_points > 0 ? history.quadrature_points
                                                     : mesh.order() + 1;
  const QuadratureRule rule = gauss_rule(q_points);
  const BandedMatrix mass = assemble_mass(mesh, rule);

  StabilityReport report;
  const double norm0 = mass_l2_norm(mass, history.fields.front().coefficients());
  report.max_l2_ratio = norm0 > 0.0 ? 1.0 : 0.0;

  std::vector<double> running(static_cast<std::size_t>(mesh.n_elements()) * rule.size(), 0.0);
  for (std::size_t n = 1; n < history.fields.size(); ++n) {
    const SolutionField& field = history.fields[n];
    double run_min = 0.0;
    const SigmaStats stats =
        sigma_field_stats(field, field.time_stamp(), params, rule, &running, &run_min);
    report.step_summand_min.push_back(stats.summand_min);
    report.running_sum_min.push_back(run_min);
    if (run_min < 0.0) report.nonnegative_every_step = false;
    if (norm0 > 0.0)
      report.max_l2_ratio =
          std::max(report.max_l2_ratio, mass_l2_norm(mass, field.coefficients()) / norm0);
  }
  report.final_running_sum_min =
      report.running_sum_min.empty() ? 0.0 : report.running_sum_min.back();
  report.nonnegative_final = report.final_running_sum_min >= 0.0;
  return report;
}

}  // namespace ratemig
