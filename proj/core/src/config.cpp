// SPDX-License-Identifier: MIT
#include "ratemig/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"

namespace ratemig {

using nlohmann::json;

namespace {

std::string format_to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    default: return "both";
  }
}

std::string method_to_string(BoundaryMethod m) {
  switch (m) {
    case BoundaryMethod::direct: return "direct";
    case BoundaryMethod::green: return "green";
    default: return "both";
  }
}

json to_json(const RunConfig& c) {
  json doc;
  doc["model"] = {{"rate", c.model.rate},
                  {"sigma_low_grade", c.model.sigma_low_grade},
                  {"sigma_high_grade", c.model.sigma_high_grade},
                  {"gamma", c.model.gamma},
                  {"delta", c.model.delta},
                  {"epsilon", c.model.epsilon},
                  {"maturity", c.model.maturity},
                  {"x_min", c.model.x_min},
                  {"x_max", c.model.x_max},
                  {"face_value", c.model.face_value}};
  doc["mesh"] = {{"n_elements", c.mesh.n_elements}, {"order", c.mesh.order}};
  doc["mesh"]["breakpoints"] = c.mesh.breakpoints.empty() ? json() : json(c.mesh.breakpoints);
  doc["time"] = {{"n_steps", c.time.n_steps}};
  doc["bc"] = {{"left", c.bc.left ? json(*c.bc.left) : json()},
               {"right", c.bc.right ? json(*c.bc.right) : json()}};
  doc["operator"] = {{"convection_sign", c.op.convection_sign},
                     {"reaction_coefficient", c.op.reaction_coefficient},
                     {"fd_convection",
                      c.op.fd_convection == ConvectionScheme::central ? "central" : "upwind"}};
  doc["boundary"] = {{"method", method_to_string(c.boundary.method)},
                     {"warm_start", c.boundary.warm_start}};
  doc["spatial_study"] = {{"orders", c.spatial.orders},
                          {"element_counts", c.spatial.element_counts},
                          {"n_steps", c.spatial.n_steps}};
  doc["temporal_study"] = {{"n_steps_list", c.temporal.n_steps_list},
                           {"n_elements", c.temporal.n_elements},
                           {"order", c.temporal.order}};
  doc["output"] = {{"directory", c.output.directory},
                   {"format", format_to_string(c.output.format)}};
  return doc;
}

void reject_unknown_keys(const json& doc, const json& schema, const std::string& path) {
  if (!doc.is_object()) return;
  for (const auto& [key, value] : doc.items()) {
    const std::string here = path.empty() ? key : path + "." + key;
    if (!schema.is_object() || !schema.contains(key))
      throw ConfigError("unknown configuration key '" + here + "'");
    if (value.is_object()) reject_unknown_keys(value, schema.at(key), here);
  }
}

const json* lookup(const json& doc, std::initializer_list<const char*> path) {
  const json* node = &doc;
  for (const char* key : path) {
    if (!node->is_object() || !node->contains(key)) return nullptr;
    node = &node->at(key);
  }
  return node;
}

void read_number(const json& doc, std::initializer_list<const char*> path,
                 const std::string& name, double& out) {
  if (const json* node = lookup(doc, path)) {
    if (!node->is_number()) throw ConfigError("key '" + name + "' must be a number");
    out = node->get<double>();
  }
}

void read_int(const json& doc, std::initializer_list<const char*> path, const std::string& name,
              int& out) {
  if (const json* node = lookup(doc, path)) {
    if (!node->is_number_integer()) throw ConfigError("key '" + name + "' must be an integer");
    out = node->get<int>();
  }
}

void read_bool(const json& doc, std::initializer_list<const char*> path, const std::string& name,
               bool& out) {
  if (const json* node = lookup(doc, path)) {
    if (!node->is_boolean()) throw ConfigError("key '" + name + "' must be a boolean");
    out = node->get<bool>();
  }
}

void read_string(const json& doc, std::initializer_list<const char*> path,
                 const std::string& name, std::string& out) {
  if (const json* node = lookup(doc, path)) {
    if (!node->is_string()) throw ConfigError("key '" + name + "' must be a string");
    out = node->get<std::string>();
  }
}

void read_int_list(const json& doc, std::initializer_list<const char*> path,
                   const std::string& name, std::vector<int>& out) {
  if (const json* node = lookup(doc, path)) {
    if (!node->is_array()) throw ConfigError("key '" + name + "' must be an array of integers");
    std::vector<int> values;
    for (const auto& v : *node) {
      if (!v.is_number_integer())
        throw ConfigError("key '" + name + "' must be an array of integers");
      values.push_back(v.get<int>());
    }
    out = std::move(values);
  }
}

}  // namespace

std::shared_ptr<const Mesh> RunConfig::make_mesh() const {
  if (!mesh.breakpoints.empty())
    return std::make_shared<const Mesh>(build_mesh(mesh.breakpoints, mesh.order));
  return std::make_shared<const Mesh>(
      build_mesh(model.x_min, model.x_max, mesh.n_elements, mesh.order));
}

TimeGrid RunConfig::make_time_grid() const { return TimeGrid(model.maturity, time.n_steps); }

BoundaryCondition RunConfig::make_boundary_condition() const {
  BoundaryCondition base = default_boundary(model);
  if (bc.left) {
    const double v = *bc.left;
    base.left = [v](double) { return v; };
  }
  if (bc.right) {
    const double v = *bc.right;
    base.right = [v](double) { return v; };
  }
  return base;
}

SolverOptions RunConfig::make_solver_options(int n_threads) const {
  SolverOptions options;
  options.op_options.convection_sign = op.convection_sign;
  options.op_options.reaction_coefficient = op.reaction_coefficient;
  options.n_threads = n_threads;
  return options;
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration root must be a JSON object");

  RunConfig config;
  reject_unknown_keys(doc, to_json(config), "");

  read_number(doc, {"model", "rate"}, "model.rate", config.model.rate);
  read_number(doc, {"model", "sigma_low_grade"}, "model.sigma_low_grade",
              config.model.sigma_low_grade);
  read_number(doc, {"model", "sigma_high_grade"}, "model.sigma_high_grade",
              config.model.sigma_high_grade);
  read_number(doc, {"model", "gamma"}, "model.gamma", config.model.gamma);
  read_number(doc, {"model", "delta"}, "model.delta", config.model.delta);
  read_number(doc, {"model", "epsilon"}, "model.epsilon", config.model.epsilon);
  read_number(doc, {"model", "maturity"}, "model.maturity", config.model.maturity);
  read_number(doc, {"model", "x_min"}, "model.x_min", config.model.x_min);
  read_number(doc, {"model", "x_max"}, "model.x_max", config.model.x_max);
  read_number(doc, {"model", "face_value"}, "model.face_value", config.model.face_value);

  read_int(doc, {"mesh", "n_elements"}, "mesh.n_elements", config.mesh.n_elements);
  read_int(doc, {"mesh", "order"}, "mesh.order", config.mesh.order);
  if (const json* node = lookup(doc, {"mesh", "breakpoints"})) {
    if (node->is_null()) {
      config.mesh.breakpoints.clear();
    } else if (node->is_array()) {
      std::vector<double> values;
      for (const auto& v : *node) {
        if (!v.is_number())
          throw ConfigError("key 'mesh.breakpoints' must be null or an array of numbers");
        values.push_back(v.get<double>());
      }
      config.mesh.breakpoints = std::move(values);
    } else {
      throw ConfigError("key 'mesh.breakpoints' must be null or an array of numbers");
    }
  }

  read_int(doc, {"time", "n_steps"}, "time.n_steps", config.time.n_steps);

  for (const char* side : {"left", "right"}) {
    if (const json* node = lookup(doc, {"bc", side})) {
      if (node->is_null()) continue;
      if (!node->is_number())
        throw ConfigError(std::string("key 'bc.") + side + "' must be null or a number");
      (side[0] == 'l' ? config.bc.left : config.bc.right) = node->get<double>();
    }
  }

  read_number(doc, {"operator", "convection_sign"}, "operator.convection_sign",
              config.op.convection_sign);
  read_number(doc, {"operator", "reaction_coefficient"}, "operator.reaction_coefficient",
              config.op.reaction_coefficient);
  std::string fd_convection =
      config.op.fd_convection == ConvectionScheme::central ? "central" : "upwind";
  read_string(doc, {"operator", "fd_convection"}, "operator.fd_convection", fd_convection);

  std::string method = method_to_string(config.boundary.method);
  read_string(doc, {"boundary", "method"}, "boundary.method", method);
  read_bool(doc, {"boundary", "warm_start"}, "boundary.warm_start", config.boundary.warm_start);

  read_int_list(doc, {"spatial_study", "orders"}, "spatial_study.orders", config.spatial.orders);
  read_int_list(doc, {"spatial_study", "element_counts"}, "spatial_study.element_counts",
                config.spatial.element_counts);
  read_int(doc, {"spatial_study", "n_steps"}, "spatial_study.n_steps", config.spatial.n_steps);

  read_int_list(doc, {"temporal_study", "n_steps_list"}, "temporal_study.n_steps_list",
                config.temporal.n_steps_list);
  read_int(doc, {"temporal_study", "n_elements"}, "temporal_study.n_elements",
           config.temporal.n_elements);
  read_int(doc, {"temporal_study", "order"}, "temporal_study.order", config.temporal.order);

  read_string(doc, {"output", "directory"}, "output.directory", config.output.directory);
  std::string format = format_to_string(config.output.format);
  read_string(doc, {"output", "format"}, "output.format", format);

  // Range checks; every message names the key so the CLI can exit 1 usefully.
  try {
    config.model.validate();
  } catch (const InvalidParameterError& err) {
    throw ConfigError(std::string("model: ") + err.what());
  }
  if (config.mesh.order < 1 || config.mesh.order > kMaxElementOrder)
    throw ConfigError("key 'mesh.order' must lie in [1, " + std::to_string(kMaxElementOrder) +
                      "], got " + std::to_string(config.mesh.order));
  if (config.mesh.n_elements < 1)
    throw ConfigError("key 'mesh.n_elements' must be positive, got " +
                      std::to_string(config.mesh.n_elements));
  if (!config.mesh.breakpoints.empty()) {
    if (config.mesh.breakpoints.size() < 2)
      throw ConfigError("key 'mesh.breakpoints' needs at least two entries");
    for (std::size_t i = 0; i + 1 < config.mesh.breakpoints.size(); ++i)
      if (!(config.mesh.breakpoints[i] < config.mesh.breakpoints[i + 1]))
        throw ConfigError("key 'mesh.breakpoints' must increase strictly");
    const double span = config.model.x_max - config.model.x_min;
    if (std::abs(config.mesh.breakpoints.front() - config.model.x_min) > 1e-12 * span ||
        std::abs(config.mesh.breakpoints.back() - config.model.x_max) > 1e-12 * span)
      throw ConfigError("key 'mesh.breakpoints' must span [model.x_min, model.x_max]");
  }
  if (config.model.maturity > 0.0 && config.time.n_steps < 1)
    throw ConfigError("key 'time.n_steps' must be positive, got " +
                      std::to_string(config.time.n_steps));

  if (fd_convection == "central")
    config.op.fd_convection = ConvectionScheme::central;
  else if (fd_convection == "upwind")
    config.op.fd_convection = ConvectionScheme::upwind;
  else
    throw ConfigError("key 'operator.fd_convection' must be 'central' or 'upwind', got '" +
                      fd_convection + "'");
  if (config.op.convection_sign != 1.0 && config.op.convection_sign != -1.0)
    throw ConfigError("key 'operator.convection_sign' must be +1 or -1");
  if (!std::isfinite(config.op.reaction_coefficient))
    throw ConfigError("key 'operator.reaction_coefficient' must be finite");

  if (method == "direct")
    config.boundary.method = BoundaryMethod::direct;
  else if (method == "green")
    config.boundary.method = BoundaryMethod::green;
  else if (method == "both")
    config.boundary.method = BoundaryMethod::both;
  else
    throw ConfigError("key 'boundary.method' must be 'direct', 'green' or 'both', got '" +
                      method + "'");

  auto check_counts = [](const std::vector<int>& values, const std::string& name) {
    if (values.empty()) throw ConfigError("key '" + name + "' must not be empty");
    for (int v : values)
      if (v < 1) throw ConfigError("key '" + name + "' entries must be positive");
  };
  check_counts(config.spatial.orders, "spatial_study.orders");
  for (int r : config.spatial.orders)
    if (r < 1 || r > kMaxElementOrder - 1)
      throw ConfigError("key 'spatial_study.orders' entries must lie in [1, " +
                        std::to_string(kMaxElementOrder - 1) + "], got " + std::to_string(r));
  check_counts(config.spatial.element_counts, "spatial_study.element_counts");
  if (config.spatial.n_steps < 1)
    throw ConfigError("key 'spatial_study.n_steps' must be positive");
  check_counts(config.temporal.n_steps_list, "temporal_study.n_steps_list");
  if (config.temporal.n_elements < 1)
    throw ConfigError("key 'temporal_study.n_elements' must be positive");
  if (config.temporal.order < 1 || config.temporal.order > kMaxElementOrder)
    throw ConfigError("key 'temporal_study.order' must lie in [1, " +
                      std::to_string(kMaxElementOrder) + "], got " +
                      std::to_string(config.temporal.order));

  if (format == "csv")
    config.output.format = OutputFormat::csv;
  else if (format == "json")
    config.output.format = OutputFormat::json;
  else if (format == "both")
    config.output.format = OutputFormat::both;
  else
    throw ConfigError("key 'output.format' must be 'csv', 'json' or 'both', got '" + format +
                      "'");
  if (config.output.directory.empty())
    throw ConfigError("key 'output.directory' must not be empty");

  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config, bool pretty) {
  return pretty ? to_json(config).dump(2) + "\n" : to_json(config).dump();
}

std::string override_json(const std::string& json_text, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string value_text = assignment.substr(eq + 1);

  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + err.what());
  }

  json value;
  try {
    value = json::parse(value_text);
  } catch (const json::parse_error&) {
    value = value_text;  // bare words are strings
  }

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ConfigError("override key '" + key + "' has an empty segment");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    if (!node->is_object() && !node->is_null())
      throw ConfigError("override key '" + key + "' descends into a non-object");
    start = dot + 1;
  }
  return doc.dump();
}

}  // namespace ratemig
