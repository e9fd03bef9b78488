// SPDX-License-Identifier: MIT
#include "ratemig/fd_reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratemig/errors.hpp"

namespace ratemig {

std::span<const double> FDGrid::level(int n) const {
  if (n < 0 || n > nt())
    throw DomainError("time level " + std::to_string(n) + " outside [0, " + std::to_string(nt()) +
                      "]");
  return std::span<const double>(u).subspan(static_cast<std::size_t>(n) * nx(), nx());
}

namespace {

// Cubic Lagrange weights on four consecutive uniform nodes; s is the offset
// of the query from the second node in units of dx, kept in [0, 1] away from
// the window ends.
struct CubicStencil {
  int j0;  // leftmost of the four nodes
  double w[4];
  double dw[4];  // derivative weights, units of 1/dx
};

CubicStencil cubic_stencil(const std::vector<double>& x, double xq) {
  const int nx = static_cast<int>(x.size());
  const double dx = (x.back() - x.front()) / (nx - 1);
  const double slack = 1e-12 * (x.back() - x.front());
  if (xq < x.front() - slack || xq > x.back() + slack)
    throw DomainError("coordinate " + std::to_string(xq) + " outside grid window");
  const double clamped = std::clamp(xq, x.front(), x.back());
  int j = static_cast<int>((clamped - x.front()) / dx);
  j = std::clamp(j, 0, nx - 2);
  const int j0 = std::clamp(j - 1, 0, nx - 4);
  const double s = (clamped - x[j0]) / dx;  // in [0, 3]

  CubicStencil st;
  st.j0 = j0;
  const double nodes[4] = {0.0, 1.0, 2.0, 3.0};
  for (int i = 0; i < 4; ++i) {
    double v = 1.0, d = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (k == i) continue;
      double term = 1.0 / (nodes[i] - nodes[k]);
      for (int m = 0; m < 4; ++m) {
        if (m == i || m == k) continue;
        term *= (s - nodes[m]) / (nodes[i] - nodes[m]);
      }
      d += term;
      v *= (s - nodes[k]) / (nodes[i] - nodes[k]);
    }
    st.w[i] = v;
    st.dw[i] = d / dx;
  }
  return st;
}

}  // namespace

double FDGrid::value_at(int n, double xq) const {
  const auto lvl = level(n);
  const CubicStencil st = cubic_stencil(x, xq);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += st.w[i] * lvl[st.j0 + i];
  return acc;
}

double FDGrid::derivative_at(int n, double xq) const {
  const auto lvl = level(n);
  const CubicStencil st = cubic_stencil(x, xq);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += st.dw[i] * lvl[st.j0 + i];
  return acc;
}

int fd_min_steps(const ModelParams& params, int nx) {
  if (nx < 4)
    throw InvalidParameterError("fd grid needs at least 4 nodes, got " + std::to_string(nx));
  const double dx = (params.x_max - params.x_min) / (nx - 1);
  const double sigma2 = params.sigma_low_grade * params.sigma_low_grade;
  return std::max(1, static_cast<int>(std::ceil(params.maturity * sigma2 / (dx * dx))));
}

FDGrid explicit_fd_solve(const ModelParams& params, int nx, int nt, const BoundaryCondition& bc,
                         ConvectionScheme scheme) {
  params.validate();
  if (nx < 4)
    throw InvalidParameterError("fd grid needs at least 4 nodes, got " + std::to_string(nx));
  if (params.maturity > 0.0 && nt < 1)
    throw InvalidParameterError("fd march needs at least one step, got " + std::to_string(nt));
  if (!bc.left || !bc.right) throw InvalidParameterError("boundary condition has empty callables");

  const double dx = (params.x_max - params.x_min) / (nx - 1);
  const int steps = params.maturity == 0.0 ? 0 : nt;
  const double dt = steps == 0 ? 0.0 : params.maturity / steps;
  const double sigma2_max = params.sigma_low_grade * params.sigma_low_grade;
  if (steps > 0 && dt > dx * dx / sigma2_max * (1.0 + 1e-12))
    throw InvalidParameterError(
        "explicit step dt = " + std::to_string(dt) + " violates dt <= dx^2/sigma_L^2 = " +
        std::to_string(dx * dx / sigma2_max) + "; need nt >= " +
        std::to_string(fd_min_steps(params, nx)));

  FDGrid grid;
  grid.x.resize(nx);
  for (int j = 0; j < nx; ++j) grid.x[j] = params.x_min + dx * j;
  grid.x.back() = params.x_max;
  grid.t.resize(steps + 1);
  for (int n = 0; n <= steps; ++n) grid.t[n] = dt * n;
  if (steps > 0) grid.t.back() = params.maturity;
  grid.u.assign(static_cast<std::size_t>(steps + 1) * nx, 0.0);

  for (int j = 0; j < nx; ++j) grid.u[j] = initial_condition(grid.x[j]);
  grid.u[0] = bc.left(0.0);
  grid.u[nx - 1] = bc.right(0.0);

  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_2dx = 0.5 / dx;
  for (int n = 0; n < steps; ++n) {
    const double t_prev = grid.t[n];
    const double threshold = params.gamma * std::exp(-params.delta * t_prev);
    const double* prev = grid.u.data() + static_cast<std::size_t>(n) * nx;
    double* next = grid.u.data() + static_cast<std::size_t>(n + 1) * nx;
    for (int j = 1; j < nx - 1; ++j) {
      const double sigma = volatility_for_gap(prev[j] - threshold, params);
      const double half_sigma2 = 0.5 * sigma * sigma;
      const double convection = params.rate + half_sigma2;
      const double diff = (prev[j + 1] - 2.0 * prev[j] + prev[j - 1]) * inv_dx2;
      // The convection coefficient is positive, so information flows from
      // the right; upwind therefore takes the forward difference.
      const double grad = scheme == ConvectionScheme::central
                              ? (prev[j + 1] - prev[j - 1]) * inv_2dx
                              : (prev[j + 1] - prev[j]) / dx;
      next[j] = prev[j] + dt * (half_sigma2 * diff + convection * grad);
    }
    next[0] = bc.left(grid.t[n + 1]);
    next[nx - 1] = bc.right(grid.t[n + 1]);
  }
  return grid;
}

}  // namespace ratemig
