// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ratemig/model.hpp"
#include "ratemig/stepping.hpp"

namespace ratemig {

/// Convection discretization of the finite difference reference solver.
enum class ConvectionScheme { central, upwind };

/// Dense space-time grid produced by the explicit reference solver.
struct FDGrid {
  std::vector<double> x;  ///< nx uniform nodes covering [x_min, x_max]
  std::vector<double> t;  ///< nt + 1 uniform levels covering [0, maturity]
  std::vector<double> u;  ///< row-major: u[n * nx + j]

  int nx() const noexcept { return static_cast<int>(x.size()); }
  int nt() const noexcept { return static_cast<int>(t.size()) - 1; }
  std::span<const double> level(int n) const;

  /// Cubic Lagrange interpolation on the four nodes nearest xq.
  double value_at(int n, double xq) const;
  double derivative_at(int n, double xq) const;
};

/// Forward Euler finite difference march of the same regularized model:
/// central (or upwind) convection, the volatility lagged at the previous
/// level exactly like the implicit solver, same initial profile and
/// Dirichlet data.  Enforces the diffusion stability bound
/// dt <= dx^2 / sigma_low_grade^2 and names the smallest admissible nt when
/// violated.
FDGrid explicit_fd_solve(const ModelParams& params, int nx, int nt, const BoundaryCondition& bc,
                         ConvectionScheme scheme = ConvectionScheme::central);

/// Smallest step count satisfying the diffusion stability bound.
int fd_min_steps(const ModelParams& params, int nx);

}  // namespace ratemig
