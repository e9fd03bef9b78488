// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratemig/assembly.hpp"
#include "ratemig/fd_reference.hpp"
#include "ratemig/free_boundary.hpp"
#include "ratemig/mesh.hpp"
#include "ratemig/model.hpp"
#include "ratemig/stepping.hpp"

namespace ratemig {

enum class OutputFormat { csv, json, both };

struct MeshConfig {
  int n_elements = 1024;
  int order = 1;
  std::vector<double> breakpoints;  ///< empty selects the uniform mesh

  bool operator==(const MeshConfig&) const = default;
};

struct TimeConfig {
  int n_steps = 1024;

  bool operator==(const TimeConfig&) const = default;
};

/// Constant Dirichlet overrides; unset entries fall back to the frozen
/// initial-profile values.
struct BcConfig {
  std::optional<double> left, right;

  bool operator==(const BcConfig&) const = default;
};

struct OperatorConfig {
  double convection_sign = 1.0;
  double reaction_coefficient = 0.0;
  ConvectionScheme fd_convection = ConvectionScheme::central;

  bool operator==(const OperatorConfig&) const = default;
};

struct BoundaryTrackConfig {
  BoundaryMethod method = BoundaryMethod::both;
  bool warm_start = true;

  bool operator==(const BoundaryTrackConfig&) const = default;
};

struct SpatialStudyConfig {
  std::vector<int> orders{1};
  std::vector<int> element_counts{64, 128, 256, 512, 1024};
  int n_steps = 4096;

  bool operator==(const SpatialStudyConfig&) const = default;
};

struct TemporalStudyConfig {
  std::vector<int> n_steps_list{64, 128, 256, 512, 1024};
  int n_elements = 2048;
  int order = 1;

  bool operator==(const TemporalStudyConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  OutputFormat format = OutputFormat::both;

  bool operator==(const OutputConfig&) const = default;
};

/// Complete run description.  Every field has the model's default value, so
/// an empty JSON document is a valid configuration.
struct RunConfig {
  ModelParams model;
  MeshConfig mesh;
  TimeConfig time;
  BcConfig bc;
  OperatorConfig op;
  BoundaryTrackConfig boundary;
  SpatialStudyConfig spatial;
  TemporalStudyConfig temporal;
  OutputConfig output;

  bool operator==(const RunConfig&) const = default;

  std::shared_ptr<const Mesh> make_mesh() const;
  TimeGrid make_time_grid() const;
  BoundaryCondition make_boundary_condition() const;
  SolverOptions make_solver_options(int n_threads = 1) const;
};

/// Parses a JSON document into a configuration.  Missing keys keep their
/// defaults; unknown keys and out-of-range values are rejected with a
/// ConfigError naming the dotted key path.
RunConfig parse_config(const std::string& json_text);

/// Reads and parses a configuration file.
RunConfig load_config_file(const std::string& path);

/// Canonical JSON rendering; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config, bool pretty = true);

/// Applies one "dotted.key=value" override to a JSON document.  The value is
/// parsed as JSON when possible and treated as a string otherwise.
std::string override_json(const std::string& json_text, const std::string& assignment);

}  // namespace ratemig
