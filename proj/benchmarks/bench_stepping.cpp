// SPDX-License-Identifier: MIT
//
// End-to-end timings: single implicit steps, short full runs and the
// transposed Green-vector solve used by the dual boundary search.

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "ratemig/assembly.hpp"
#include "ratemig/banded.hpp"
#include "ratemig/field.hpp"
#include "ratemig/free_boundary.hpp"
#include "ratemig/mesh.hpp"
#include "ratemig/model.hpp"
#include "ratemig/stepping.hpp"

namespace {

using namespace ratemig;

void BM_BackwardEulerStep(benchmark::State& state) {
  const ModelParams params;
  const int order = static_cast<int>(state.range(1));
  auto mesh = std::make_shared<const Mesh>(
      build_mesh(params.x_min, params.x_max, static_cast<int>(state.range(0)), order));
  const auto u0 = SolutionField::interpolate(
      mesh, [](double x) { return initial_condition(x); }, 0.0);
  const auto rule = default_assembly_rule(order);
  const BandedMatrix mass = assemble_mass(*mesh, rule);
  const BoundaryCondition bc = default_boundary(params);
  const double dt = params.maturity / 1024;
  for (auto _ : state) {
    const BandedMatrix op = assemble_operator(*mesh, u0, 0.0, params, rule);
    SolutionField u1 = backward_euler_step(mass, op, u0, dt, bc);
    benchmark::DoNotOptimize(u1);
  }
}
BENCHMARK(BM_BackwardEulerStep)->Args({1024, 1})->Args({2048, 1})->Args({1024, 2});

void BM_SolverRun(benchmark::State& state) {
  const ModelParams params;
  auto mesh = std::make_shared<const Mesh>(
      build_mesh(params.x_min, params.x_max, static_cast<int>(state.range(0)), 1));
  const TimeGrid grid(params.maturity, 32);
  const BoundaryCondition bc = default_boundary(params);
  for (auto _ : state) {
    SolutionHistory history = run_solver(params, mesh, grid, bc);
    benchmark::DoNotOptimize(history);
  }
}
BENCHMARK(BM_SolverRun)->Arg(256)->Arg(1024);

void BM_GreenVectorSolve(benchmark::State& state) {
  const ModelParams params;
  auto mesh = std::make_shared<const Mesh>(
      build_mesh(params.x_min, params.x_max, static_cast<int>(state.range(0)), 1));
  const auto u0 = SolutionField::interpolate(
      mesh, [](double x) { return initial_condition(x); }, 0.0);
  const auto rule = default_assembly_rule(1);
  BandedMatrix system = assemble_mass(*mesh, rule);
  system.add_scaled(assemble_operator(*mesh, u0, 0.0, params, rule), 1.0 / 1024);
  for (auto _ : state) {
    GreenVector g = green_vector(system, *mesh, -0.22);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_GreenVectorSolve)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
