// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ratemig/assembly.hpp"
#include "ratemig/banded.hpp"
#include "ratemig/field.hpp"
#include "ratemig/mesh.hpp"
#include "ratemig/model.hpp"

namespace ratemig {

/// Uniform partition of [0, maturity] into n_steps implicit steps.  A zero
/// maturity is the degenerate empty loop: no steps, only the initial level.
struct TimeGrid {
  TimeGrid(double maturity, int n_steps);

  double maturity;
  int n_steps;
  double dt;

  /// t_n = n dt for n in [0, n_steps].
  double time_at(int n) const;
};

/// Dirichlet data at the two window endpoints as functions of time.
struct BoundaryCondition {
  std::function<double(double)> left;
  std::function<double(double)> right;
};

/// The window data the model freezes for all time: the initial profile at
/// x_min on the left, face value 1 on the right.
BoundaryCondition default_boundary(const ModelParams& params);

/// Replaces the first and last rows of a step system with identity rows, puts
/// the boundary values into the rhs endpoints, and moves the known boundary
/// columns of interior rows to the right-hand side so the interior solution
/// is untouched.  Idempotent on the matrix.
void apply_dirichlet(BandedMatrix& matrix, std::span<double> rhs, const BoundaryCondition& bc,
                     double t);

/// One implicit Euler step: solves (M + dt A) u = M u_prev with Dirichlet
/// data taken at time u_prev.time_stamp() + dt.  A is expected to carry the
/// volatility frozen at u_prev.  When residual_out is non-null it receives
/// the max-norm residual of the linear solve.
SolutionField backward_euler_step(const BandedMatrix& mass, const BandedMatrix& op,
                                  const SolutionField& u_prev, double dt,
                                  const BoundaryCondition& bc, double* residual_out = nullptr);

/// Per-step record kept by run_solver.  sigma_* and summand_min are sampled
/// at the assembly quadrature points of the lagged volatility field.
struct StepDiagnostics {
  double time = 0;                ///< time level this step produced
  double linear_residual = 0;     ///< max-norm of (M + dt A) u - rhs
  double sigma_min = 0;
  double sigma_max = 0;
  double summand_min = 0;         ///< min over x of sigma^2 - d(sigma^2)/dx
  double l2_norm = 0;             ///< L2 norm of the produced level
};

/// Full run record: levels 0..n_steps plus per-step diagnostics and the
/// ingredients needed to replay any step system (used by the Green-function
/// boundary tracker).
struct SolutionHistory {
  std::vector<SolutionField> fields;
  std::vector<StepDiagnostics> diagnostics;
  BoundaryCondition bc;
  double dt = 0;
  int quadrature_points = 0;
  OperatorOptions op_options;
};

struct SolverOptions {
  OperatorOptions op_options{};
  int quadrature_points = 0;  ///< 0 picks order+1 Gauss points
  int n_threads = 1;
};

/// Interpolates the initial profile, then marches backward Euler steps with
/// the volatility lagged one level: step n assembles the operator from the
/// level n-1 field at time t_{n-1} and solves at t_n.  Errors from the
/// linear algebra are rethrown with the failing step attached.
SolutionHistory run_solver(const ModelParams& params, std::shared_ptr<const Mesh> mesh,
                           const TimeGrid& grid, const BoundaryCondition& bc,
                           const SolverOptions& options = {});

/// Running-sum stability diagnostic.  For each level n >= 1 it samples
///   sigma(u_n, t_n)^2 - d/dx sigma(u_n, t_n)^2
/// at the assembly quadrature points, accumulates the sum over levels at
/// each point, and reports the minima.  Nonnegative running sums reproduce
/// the discrete L2 stability bound of the lagged scheme.
struct StabilityReport {
  std::vector<double> step_summand_min;  ///< per level: min over x of the summand
  std::vector<double> running_sum_min;   ///< per level: min over x of the running sum
  double final_running_sum_min = 0;      ///< min over x after the last level
  bool nonnegative_final = true;         ///< final running sum >= 0 everywhere
  bool nonnegative_every_step = true;    ///< running sum >= 0 everywhere after every level
  double max_l2_ratio = 1.0;             ///< max_n ||u_n|| / ||u_0||
};

StabilityReport stability_diagnostic(const SolutionHistory& history, const ModelParams& params);

}  // namespace ratemig
