// SPDX-License-Identifier: MIT
#include "ratemig/config.hpp"

#include <string>

#include <doctest.h>

#include "ratemig/errors.hpp"

using namespace ratemig;

TEST_CASE("an empty document yields the default calibration") {
  const RunConfig config = parse_config("{}");
  CHECK(config == RunConfig{});
  CHECK(config.model.rate == 0.5);
  CHECK(config.model.delta == 0.005);
  CHECK(config.model.sigma_low_grade == 0.3);
  CHECK(config.model.sigma_high_grade == 0.2);
  CHECK(config.model.gamma == 0.8);
  CHECK(config.model.maturity == 1.0);
  CHECK(config.mesh.n_elements == 1024);
  CHECK(config.mesh.order == 1);
  CHECK(config.time.n_steps == 1024);
  CHECK(config.output.directory == "out");
  CHECK(config.output.format == OutputFormat::both);
}

TEST_CASE("round trip: parse(serialize(config)) == config") {
  RunConfig config;
  CHECK(parse_config(serialize_config(config)) == config);

  config.model.epsilon = 0.02;
  config.mesh.n_elements = 48;
  config.mesh.order = 2;
  config.mesh.breakpoints = {-4.0, -1.0, 0.0, 2.5, 4.0};
  config.time.n_steps = 12;
  config.bc.left = 0.05;
  config.op.fd_convection = ConvectionScheme::upwind;
  config.boundary.method = BoundaryMethod::green;
  config.boundary.warm_start = false;
  config.spatial.orders = {1, 2, 3};
  config.temporal.n_steps_list = {8, 16};
  config.output.directory = "elsewhere";
  config.output.format = OutputFormat::csv;
  CHECK(parse_config(serialize_config(config)) == config);
  CHECK(parse_config(serialize_config(config, false)) == config);
}

TEST_CASE("documented keys are parsed into their fields") {
  const auto config = parse_config(R"({
    "model": {"rate": 0.25, "epsilon": 0.04},
    "mesh": {"n_elements": 256, "order": 3},
    "time": {"n_steps": 64},
    "bc": {"left": 0.1, "right": 0.9},
    "operator": {"convection_sign": -1.0, "reaction_coefficient": 0.5,
                  "fd_convection": "upwind"},
    "boundary": {"method": "direct", "warm_start": false},
    "spatial_study": {"orders": [1, 2], "element_counts": [16, 32], "n_steps": 24},
    "temporal_study": {"n_steps_list": [8, 16], "n_elements": 128, "order": 2},
    "output": {"directory": "results", "format": "json"}
  })");
  CHECK(config.model.rate == 0.25);
  CHECK(config.model.epsilon == 0.04);
  CHECK(config.mesh.n_elements == 256);
  CHECK(config.mesh.order == 3);
  CHECK(config.time.n_steps == 64);
  CHECK(config.bc.left == 0.1);
  CHECK(config.bc.right == 0.9);
  CHECK(config.op.convection_sign == -1.0);
  CHECK(config.op.reaction_coefficient == 0.5);
  CHECK(config.op.fd_convection == ConvectionScheme::upwind);
  CHECK(config.boundary.method == BoundaryMethod::direct);
  CHECK_FALSE(config.boundary.warm_start);
  CHECK(config.spatial.orders == std::vector<int>{1, 2});
  CHECK(config.temporal.n_elements == 128);
  CHECK(config.output.directory == "results");
  CHECK(config.output.format == OutputFormat::json);
}

TEST_CASE("unknown keys are rejected with their dotted path") {
  try {
    parse_config(R"({"model": {"sigma": 0.3}})");
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("model.sigma") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"extra": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"mesh": {"orders": 2}})"), ConfigError);
}

TEST_CASE("malformed JSON is a configuration error") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(""), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model": {"rate": "fast"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"mesh": {"n_elements": 3.5}})"), ConfigError);
}

TEST_CASE("model invariants are enforced at parse time") {
  // sigma_high above sigma_low is inconsistent with the grade ordering.
  CHECK_THROWS_AS(parse_config(R"({"model": {"sigma_high_grade": 0.4}})"), ConfigError);
  // Supported element orders stop at 4.
  try {
    parse_config(R"({"mesh": {"order": 5}})");
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("order") != std::string::npos);
    CHECK(what.find("4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"mesh": {"n_elements": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"time": {"n_steps": -2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model": {"gamma": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model": {"epsilon": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"spatial_study": {"orders": []}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"spatial_study": {"orders": [4]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"spatial_study": {"element_counts": []}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"temporal_study": {"n_steps_list": []}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"boundary": {"method": "magic"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"operator": {"fd_convection": "downwind"}})"), ConfigError);
  // Breakpoints must span the model window.
  CHECK_THROWS_AS(parse_config(R"({"mesh": {"breakpoints": [-4, 0, 3]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"mesh": {"breakpoints": [-4, -4, 4]}})"), ConfigError);
}

TEST_CASE("dotted overrides reach nested keys and create structure") {
  std::string text = "{}";
  text = override_json(text, "model.epsilon=0.02");
  text = override_json(text, "mesh.n_elements=128");
  text = override_json(text, "output.format=csv");
  text = override_json(text, "boundary.warm_start=false");
  const auto config = parse_config(text);
  CHECK(config.model.epsilon == 0.02);
  CHECK(config.mesh.n_elements == 128);
  CHECK(config.output.format == OutputFormat::csv);
  CHECK_FALSE(config.boundary.warm_start);

  // Values that do not parse as JSON are taken as strings.
  const auto dir = parse_config(override_json("{}", "output.directory=my out dir"));
  CHECK(dir.output.directory == "my out dir");

  // Arrays parse as JSON.
  const auto lists = parse_config(override_json("{}", "spatial_study.orders=[1,2]"));
  CHECK(lists.spatial.orders == std::vector<int>{1, 2});

  CHECK_THROWS_AS(override_json("{}", "no_equals_sign"), ConfigError);
  CHECK_THROWS_AS(override_json("{}", "=5"), ConfigError);
  CHECK_THROWS_AS(override_json("{}", "a..b=5"), ConfigError);
}

TEST_CASE("helpers build the run ingredients from the config") {
  RunConfig config;
  config.mesh.n_elements = 32;
  config.time.n_steps = 16;
  const auto mesh = config.make_mesh();
  CHECK(mesh->n_elements() == 32);
  CHECK(mesh->x_min() == config.model.x_min);
  CHECK(mesh->x_max() == config.model.x_max);
  const auto grid = config.make_time_grid();
  CHECK(grid.n_steps == 16);
  CHECK(grid.maturity == config.model.maturity);
  const auto bc = config.make_boundary_condition();
  CHECK(bc.left(0.0) == doctest::Approx(initial_condition(-4.0)).epsilon(1e-16));
  CHECK(bc.right(0.0) == 1.0);

  // Explicit boundary overrides win.
  config.bc.left = 0.123;
  config.bc.right = 0.456;
  const auto bc2 = config.make_boundary_condition();
  CHECK(bc2.left(0.5) == 0.123);
  CHECK(bc2.right(0.5) == 0.456);

  const auto options = config.make_solver_options(3);
  CHECK(options.n_threads == 3);
  CHECK(options.op_options.convection_sign == 1.0);

  // Custom breakpoints flow into the mesh.
  config.mesh.breakpoints = {-4.0, -1.0, 0.0, 4.0};
  const auto custom = config.make_mesh();
  CHECK(custom->n_elements() == 3);
  CHECK(custom->breakpoints() == config.mesh.breakpoints);
}

TEST_CASE("config files load from disk and missing files are reported") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/path/config.json"), ConfigError);
}
