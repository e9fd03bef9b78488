// SPDX-License-Identifier: MIT
#include "ratemig/fd_reference.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <doctest.h>

#include "ratemig/errors.hpp"
#include "ratemig/stepping.hpp"

using namespace ratemig;

TEST_CASE("minimal step count enforces the diffusion bound") {
  ModelParams p;  // sigma_low 0.3 on [-4, 4], maturity 1
  // dx = 8/2048 and dt <= dx^2/0.09 demand nt >= 5899 at nx = 2049.
  CHECK(fd_min_steps(p, 2049) == 5899);
  // Coarser grid: dx = 8/64, bound nt >= 0.09 * 64^2 / 64 = 5.76 -> 6.
  CHECK(fd_min_steps(p, 65) == 6);
}

TEST_CASE("violating the bound names the smallest admissible step count") {
  ModelParams p;
  const auto bc = default_boundary(p);
  try {
    explicit_fd_solve(p, 2049, 100, bc);
    FAIL("expected the stability guard to throw");
  } catch (const InvalidParameterError& e) {
    CHECK(std::string(e.what()).find("5899") != std::string::npos);
  }
}

TEST_CASE("grid covers the window and the horizon uniformly") {
  ModelParams p;
  const auto bc = default_boundary(p);
  const auto grid = explicit_fd_solve(p, 65, 8, bc);
  REQUIRE(grid.nx() == 65);
  REQUIRE(grid.nt() == 8);
  CHECK(grid.x.front() == -4.0);
  CHECK(grid.x.back() == 4.0);
  CHECK(grid.t.front() == 0.0);
  CHECK(grid.t.back() == 1.0);
  CHECK(grid.level(0).size() == 65);

  // Level 0 is the initial profile, endpoints carry the Dirichlet data.
  for (int j = 0; j < grid.nx(); ++j)
    CHECK(grid.level(0)[j] == doctest::Approx(initial_condition(grid.x[j])).epsilon(1e-15));
  for (int n = 0; n <= grid.nt(); ++n) {
    CHECK(grid.level(n).front() == doctest::Approx(bc.left(grid.t[n])).epsilon(1e-15));
    CHECK(grid.level(n).back() == doctest::Approx(bc.right(grid.t[n])).epsilon(1e-15));
  }
}

TEST_CASE("upwind convection keeps the march inside the initial bounds") {
  // The enforced bound covers the central scheme; the upwind variant is
  // monotone only under the stricter dt <= dx^2/(sigma^2 + c dx), which a
  // 4x step refinement satisfies comfortably.  Then values stay within the
  // data range exactly.
  ModelParams p;
  const auto bc = default_boundary(p);
  const auto grid = explicit_fd_solve(p, 129, 4 * fd_min_steps(p, 129), bc,
                                      ConvectionScheme::upwind);
  const double lo = std::exp(-4.0) - 1e-12, hi = 1.0 + 1e-12;
  for (int n = 0; n <= grid.nt(); ++n)
    for (double v : grid.level(n)) {
      CHECK(v >= lo);
      CHECK(v <= hi);
    }
}

TEST_CASE("central and upwind schemes agree to first order in dx") {
  ModelParams p;
  const auto bc = default_boundary(p);
  const int nx = 257;
  const int nt = 4 * fd_min_steps(p, nx);  // inside the upwind monotone region
  const auto central = explicit_fd_solve(p, nx, nt, bc, ConvectionScheme::central);
  const auto upwind = explicit_fd_solve(p, nx, nt, bc, ConvectionScheme::upwind);
  double diff = 0;
  for (int j = 0; j < nx; ++j)
    diff = std::max(diff, std::abs(central.level(nt)[j] - upwind.level(nt)[j]));
  CHECK(diff > 0.0);    // genuinely different discretizations
  CHECK(diff < 5e-2);   // but the same PDE
}

TEST_CASE("with convection cancelled the march is the explicit heat stencil") {
  // rate = -sigma^2/2 makes the convection coefficient exactly zero, so each
  // update must reproduce u + dt (sigma^2/2) (u_{j+1} - 2u_j + u_{j-1})/dx^2,
  // whose single-mode decay factor is 1 - (sigma^2/2) dt (2 - 2cos(k dx))/dx^2.
  ModelParams p;
  p.sigma_low_grade = p.sigma_high_grade = 0.3;
  p.rate = -0.5 * 0.3 * 0.3;
  const auto bc = default_boundary(p);
  const int nx = 65, nt = 20;
  const auto grid = explicit_fd_solve(p, nx, nt, bc);
  const double dx = grid.x[1] - grid.x[0];
  const double dt = grid.t[1] - grid.t[0];
  const double half_s = 0.5 * 0.3 * 0.3;
  for (int n = 0; n < nt; ++n) {
    const auto prev = grid.level(n);
    const auto next = grid.level(n + 1);
    for (int j = 1; j < nx - 1; ++j) {
      const double expected =
          prev[j] + dt * half_s * (prev[j + 1] - 2 * prev[j] + prev[j - 1]) / (dx * dx);
      CHECK(next[j] == doctest::Approx(expected).scale(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("constant data with matching boundary stays constant forever") {
  // On a window inside x >= 0 the initial profile is identically 1; the
  // difference stencils annihilate constants.
  ModelParams p;
  p.x_min = 0.5;
  p.x_max = 4.0;
  const BoundaryCondition bc{[](double) { return 1.0; }, [](double) { return 1.0; }};
  const auto grid = explicit_fd_solve(p, 33, 16, bc);
  for (int n = 0; n <= grid.nt(); ++n)
    for (double v : grid.level(n)) CHECK(v == 1.0);
}

TEST_CASE("cubic interpolation reproduces cubics between the nodes") {
  FDGrid grid;
  const int nx = 11;
  for (int j = 0; j < nx; ++j) grid.x.push_back(-1.0 + 0.2 * j);
  grid.t = {0.0, 1.0};
  auto cubic = [](double x) { return 2.0 + x - 0.5 * x * x + 0.25 * x * x * x; };
  auto cubic_d = [](double x) { return 1.0 - x + 0.75 * x * x; };
  for (int n = 0; n < 2; ++n)
    for (int j = 0; j < nx; ++j) grid.u.push_back(cubic(grid.x[j]));

  for (double xq : {-0.97, -0.51, -0.1, 0.33, 0.74, 0.99}) {
    CHECK(grid.value_at(1, xq) == doctest::Approx(cubic(xq)).epsilon(1e-13));
    CHECK(grid.derivative_at(1, xq) == doctest::Approx(cubic_d(xq)).epsilon(1e-11));
  }
  // Node hits are exact.
  CHECK(grid.value_at(0, grid.x[4]) == doctest::Approx(cubic(grid.x[4])).epsilon(1e-15));
}

TEST_CASE("refining the grid moves the march toward a limit") {
  // Self-convergence of the reference solver: compare each resolution
  // against a finer one at the final time on shared nodes.
  ModelParams p;
  const auto bc = default_boundary(p);
  auto run = [&](int nx) { return explicit_fd_solve(p, nx, fd_min_steps(p, nx), bc); };
  const auto coarse = run(65);
  const auto mid = run(129);
  const auto fine = run(257);

  auto gap = [](const FDGrid& a, const FDGrid& b) {
    double worst = 0;
    for (int j = 0; j < a.nx(); ++j)
      worst = std::max(worst, std::abs(a.level(a.nt())[j] - b.value_at(b.nt(), a.x[j])));
    return worst;
  };
  const double d1 = gap(coarse, mid);
  const double d2 = gap(mid, fine);
  CHECK(d2 < d1);        // errors shrink under refinement
  CHECK(d1 < 5e-2);      // and the kinked initial profile keeps 65 nodes coarse
}

TEST_CASE("degenerate inputs are rejected") {
  ModelParams p;
  const auto bc = default_boundary(p);
  CHECK_THROWS_AS(explicit_fd_solve(p, 2, 8, bc), InvalidParameterError);
  CHECK_THROWS_AS(explicit_fd_solve(p, 65, 0, bc), InvalidParameterError);
  CHECK_THROWS_AS(fd_min_steps(p, 1), InvalidParameterError);
}
