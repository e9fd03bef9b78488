// SPDX-License-Identifier: MIT
//
// Hot-path timings for matrix assembly and the banded solver.  Assembly is
// the per-step cost driver of the implicit march, so sizes mirror the mesh
// resolutions the convergence studies actually run.

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "ratemig/assembly.hpp"
#include "ratemig/banded.hpp"
#include "ratemig/field.hpp"
#include "ratemig/mesh.hpp"
#include "ratemig/model.hpp"

namespace {

using namespace ratemig;

struct Setup {
  ModelParams params;
  std::shared_ptr<const Mesh> mesh;
  SolutionField field;
  QuadratureRule rule;

  Setup(int n_elements, int order)
      : mesh(std::make_shared<const Mesh>(
            build_mesh(ModelParams{}.x_min, ModelParams{}.x_max, n_elements, order))),
        field(SolutionField::interpolate(
            mesh, [](double x) { return initial_condition(x); }, 0.0)),
        rule(default_assembly_rule(order)) {}
};

void BM_AssembleMass(benchmark::State& state) {
  const Setup setup(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    BandedMatrix mass = assemble_mass(*setup.mesh, setup.rule);
    benchmark::DoNotOptimize(mass);
  }
}
BENCHMARK(BM_AssembleMass)->Args({256, 1})->Args({1024, 1})->Args({1024, 2})->Args({2048, 3});

void BM_AssembleOperator(benchmark::State& state) {
  const Setup setup(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    BandedMatrix op =
        assemble_operator(*setup.mesh, setup.field, 0.5, setup.params, setup.rule);
    benchmark::DoNotOptimize(op);
  }
}
BENCHMARK(BM_AssembleOperator)->Args({256, 1})->Args({1024, 1})->Args({1024, 2})->Args({2048, 3});

void BM_AssembleOperatorThreaded(benchmark::State& state) {
  const Setup setup(2048, 2);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BandedMatrix op = assemble_operator(*setup.mesh, setup.field, 0.5, setup.params, setup.rule,
                                        {}, threads);
    benchmark::DoNotOptimize(op);
  }
}
BENCHMARK(BM_AssembleOperatorThreaded)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_BandedFactorSolve(benchmark::State& state) {
  const Setup setup(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  BandedMatrix system = assemble_mass(*setup.mesh, setup.rule);
  system.add_scaled(
      assemble_operator(*setup.mesh, setup.field, 0.5, setup.params, setup.rule), 1e-3);
  const std::vector<double> rhs(static_cast<std::size_t>(system.size()), 1.0);
  for (auto _ : state) {
    std::vector<double> x = solve_banded(system, rhs);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_BandedFactorSolve)->Args({1024, 1})->Args({1024, 2})->Args({2048, 3});

}  // namespace
