// SPDX-License-Identifier: MIT
//
// ratemig command-line front end.
//
//   ratemig solve     march the implicit solver and dump the solution surface
//   ratemig converge  run the mesh/step refinement studies
//   ratemig boundary  track the free boundary along a run
//
// Exit codes: 0 success, 1 configuration error, 2 solver failure,
// 3 boundary tracking converged on fewer than 95% of the steps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ratemig/config.hpp"
#include "ratemig/convergence.hpp"
#include "ratemig/errors.hpp"
#include "ratemig/free_boundary.hpp"
#include "ratemig/io.hpp"
#include "ratemig/stepping.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitBoundary = 3;

struct CliOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string format;
  int threads = 0;  // 0 picks the hardware thread count
};

void add_common_options(CLI::App& cmd, CliOptions& opts) {
  cmd.add_option("--config", opts.config_path, "JSON configuration file")
      ->check(CLI::ExistingFile);
  cmd.add_option("--set", opts.overrides,
                 "dotted-key override, e.g. --set model.epsilon=0.02 (repeatable)");
  cmd.add_option("--out", opts.out_dir, "output directory (overrides output.directory)");
  cmd.add_option("--format", opts.format, "output formats (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd.add_option("--threads", opts.threads, "worker threads, 0 = hardware count")
      ->check(CLI::NonNegativeNumber);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ratemig::RunConfig build_config(const CliOptions& opts) {
  std::string text = "{}";
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw ratemig::ConfigError("cannot open config file '" + opts.config_path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  for (const auto& assignment : opts.overrides)
    text = ratemig::override_json(text, assignment);
  if (!opts.out_dir.empty())
    text = ratemig::override_json(text, "output.directory=" + opts.out_dir);
  if (!opts.format.empty())
    text = ratemig::override_json(text, "output.format=" + opts.format);
  return ratemig::parse_config(text);
}

bool wants_csv(const ratemig::RunConfig& c) {
  return c.output.format != ratemig::OutputFormat::json;
}
bool wants_json(const ratemig::RunConfig& c) {
  return c.output.format != ratemig::OutputFormat::csv;
}

template <typename Writer>
void emit(const std::filesystem::path& dir, const std::string& name, Writer&& writer) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ratemig::Error("cannot open output file '" + path.string() + "'");
  writer(out);
  out.flush();
  if (!out) throw ratemig::Error("write failed for '" + path.string() + "'");
  std::cout << "wrote " << path.string() << '\n';
}

std::filesystem::path prepare_output_dir(const ratemig::RunConfig& config) {
  std::filesystem::path dir(config.output.directory);
  std::filesystem::create_directories(dir);
  return dir;
}

ratemig::SolutionHistory run_from_config(const ratemig::RunConfig& config, int threads) {
  return ratemig::run_solver(config.model, config.make_mesh(), config.make_time_grid(),
                             config.make_boundary_condition(),
                             config.make_solver_options(threads));
}

int command_solve(const ratemig::RunConfig& config, int threads) {
  const auto history = run_from_config(config, threads);
  const auto stability = ratemig::stability_diagnostic(history, config.model);
  const auto dir = prepare_output_dir(config);
  if (wants_csv(config)) {
    emit(dir, "surface.csv", [&](std::ostream& o) { ratemig::write_surface_csv(o, history); });
    emit(dir, "steps.csv", [&](std::ostream& o) { ratemig::write_steps_csv(o, history); });
  }
  if (wants_json(config)) {
    emit(dir, "surface.json", [&](std::ostream& o) { ratemig::write_surface_json(o, history); });
    emit(dir, "run.json",
         [&](std::ostream& o) { ratemig::write_run_json(o, history, stability); });
  }
  std::cout << "levels " << history.fields.size() << ", max l2 ratio "
            << ratemig::format_number(stability.max_l2_ratio) << ", final running sum min "
            << ratemig::format_number(stability.final_running_sum_min) << '\n';
  return kExitOk;
}

int command_converge(const ratemig::RunConfig& config, int threads) {
  const ratemig::StudyOptions study{threads};
  const auto dir = prepare_output_dir(config);

  std::cout << "spatial study: orders " << config.spatial.orders.size() << ", meshes "
            << config.spatial.element_counts.size() << ", n_steps " << config.spatial.n_steps
            << '\n';
  const auto spatial = ratemig::spatial_convergence_study(
      config.model, config.spatial.orders, config.spatial.element_counts,
      config.spatial.n_steps, study);
  if (wants_csv(config))
    emit(dir, "spatial.csv", [&](std::ostream& o) { ratemig::write_table_csv(o, spatial); });
  if (wants_json(config))
    emit(dir, "spatial.json", [&](std::ostream& o) { ratemig::write_table_json(o, spatial); });

  std::cout << "temporal study: steps " << config.temporal.n_steps_list.size()
            << ", n_elements " << config.temporal.n_elements << ", order "
            << config.temporal.order << '\n';
  const auto temporal = ratemig::temporal_convergence_study(
      config.model, config.temporal.n_steps_list, config.temporal.n_elements,
      config.temporal.order, study);
  if (wants_csv(config))
    emit(dir, "temporal.csv", [&](std::ostream& o) { ratemig::write_table_csv(o, temporal); });
  if (wants_json(config))
    emit(dir, "temporal.json", [&](std::ostream& o) { ratemig::write_table_json(o, temporal); });

  for (const auto& table : {spatial, temporal})
    for (const auto& row : table.rows)
      if (row.failed)
        std::cerr << "row " << table.resolution_label << "=" << row.resolution << " r="
                  << row.order << " failed: " << row.failure_reason << '\n';
  return kExitOk;
}

int command_boundary(const ratemig::RunConfig& config, int threads) {
  const auto history = run_from_config(config, threads);
  const ratemig::TrackOptions track{config.boundary.warm_start};
  const auto path = ratemig::track_boundary(history, config.model, config.boundary.method, track);
  const auto dir = prepare_output_dir(config);
  if (wants_csv(config))
    emit(dir, "free_boundary.csv",
         [&](std::ostream& o) { ratemig::write_path_csv(o, path); });
  if (wants_json(config))
    emit(dir, "boundary.json", [&](std::ostream& o) { ratemig::write_path_json(o, path); });
  std::cout << "boundary steps attempted " << path.attempted << ", converged " << path.converged
            << ", max method discrepancy "
            << ratemig::format_number(path.max_method_discrepancy) << '\n';
  if (path.convergence_fraction() < 0.95) {
    std::cerr << "boundary tracking converged on "
              << ratemig::format_number(100.0 * path.convergence_fraction())
              << "% of steps (threshold 95%)\n";
    return kExitBoundary;
  }
  return kExitOk;
}

std::string help_footer() {
  return "Every subcommand accepts --config PATH, --set key=value (repeatable), --out DIR,\n"
         "--format csv|json|both and --threads N.\n\n"
         "Configuration keys and defaults (JSON, overridable via --set key=value):\n" +
         ratemig::serialize_config(ratemig::RunConfig{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized free-boundary solver for the rating migration model"};
  app.require_subcommand(1);
  app.footer(help_footer());

  CliOptions opts;
  auto* solve = app.add_subcommand("solve", "run the solver and dump the solution surface");
  auto* converge = app.add_subcommand("converge", "run the refinement studies");
  auto* boundary = app.add_subcommand("boundary", "track the free boundary along a run");
  for (auto* cmd : {solve, converge, boundary}) add_common_options(*cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto config = build_config(opts);
    const int threads = resolve_threads(opts.threads);
    if (solve->parsed()) return command_solve(config, threads);
    if (converge->parsed()) return command_converge(config, threads);
    return command_boundary(config, threads);
  } catch (const ratemig::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ratemig::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
