// SPDX-License-Identifier: MIT
#include "ratemig/io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace ratemig {

using nlohmann::json;

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

const char* method_name(BoundaryMethod m) {
  switch (m) {
    case BoundaryMethod::direct: return "direct";
    case BoundaryMethod::green: return "green";
    default: return "both";
  }
}

json error_json(const ErrorReport& e) {
  return {{"l2", e.l2}, {"h1", e.h1}, {"linf", e.linf}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(); }

}  // namespace

void write_surface_csv(std::ostream& out, const SolutionHistory& history) {
  out << "t,x,u\n";
  if (history.fields.empty()) return;
  const auto& nodes = history.fields.front().mesh().node_coords();
  for (const auto& field : history.fields) {
    const std::string t = format_number(field.time_stamp());
    const auto coeffs = field.coefficients();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out << t << ',' << format_number(nodes[i]) << ',' << format_number(coeffs[i]) << '\n';
  }
}

void write_surface_json(std::ostream& out, const SolutionHistory& history) {
  json doc;
  doc["x"] = json::array();
  doc["t"] = json::array();
  doc["u"] = json::array();
  if (!history.fields.empty()) {
    doc["x"] = history.fields.front().mesh().node_coords();
    for (const auto& field : history.fields) {
      doc["t"].push_back(field.time_stamp());
      doc["u"].push_back(std::vector<double>(field.coefficients().begin(),
                                             field.coefficients().end()));
    }
  }
  out << doc.dump(2) << '\n';
}

void write_steps_csv(std::ostream& out, const SolutionHistory& history) {
  out << "t,linear_residual,sigma_min,sigma_max,summand_min,l2_norm\n";
  for (const auto& d : history.diagnostics)
    out << format_number(d.time) << ',' << format_number(d.linear_residual) << ','
        << format_number(d.sigma_min) << ',' << format_number(d.sigma_max) << ','
        << format_number(d.summand_min) << ',' << format_number(d.l2_norm) << '\n';
}

void write_run_json(std::ostream& out, const SolutionHistory& history,
                    const StabilityReport& stability) {
  json doc;
  doc["dt"] = history.dt;
  doc["levels"] = history.fields.size();
  doc["steps"] = json::array();
  for (const auto& d : history.diagnostics)
    doc["steps"].push_back({{"t", d.time},
                            {"linear_residual", d.linear_residual},
                            {"sigma_min", d.sigma_min},
                            {"sigma_max", d.sigma_max},
                            {"summand_min", d.summand_min},
                            {"l2_norm", d.l2_norm}});
  doc["stability"] = {{"max_l2_ratio", stability.max_l2_ratio},
                      {"final_running_sum_min", stability.final_running_sum_min},
                      {"nonnegative_final", stability.nonnegative_final},
                      {"nonnegative_every_step", stability.nonnegative_every_step},
                      {"step_summand_min", stability.step_summand_min},
                      {"running_sum_min", stability.running_sum_min}};
  out << doc.dump(2) << '\n';
}

void write_path_csv(std::ostream& out, const FreeBoundaryPath& path) {
  out << "t,s_f,method,iterations,residual\n";
  for (const auto& e : path.entries)
    out << format_number(e.time) << ',' << format_number(e.location) << ','
        << method_name(e.method) << ',' << e.iterations << ',' << format_number(e.residual)
        << '\n';
}

void write_path_json(std::ostream& out, const FreeBoundaryPath& path) {
  json doc;
  doc["entries"] = json::array();
  for (const auto& e : path.entries)
    doc["entries"].push_back({{"t", e.time},
                              {"s_f", e.location},
                              {"method", method_name(e.method)},
                              {"iterations", e.iterations},
                              {"residual", e.residual},
                              {"converged", e.converged},
                              {"multiple", e.multiple}});
  doc["summary"] = {{"max_method_discrepancy", path.max_method_discrepancy},
                    {"attempted", path.attempted},
                    {"converged", path.converged},
                    {"convergence_fraction", path.convergence_fraction()},
                    {"green_full_steps", path.green_full_steps},
                    {"green_total_steps", path.green_total_steps}};
  out << doc.dump(2) << '\n';
}

void write_table_csv(std::ostream& out, const ConvergenceTable& table) {
  out << "resolution,order,l2,h1,linf,time_s\n";
  for (const auto& row : table.rows) {
    out << row.resolution << ',' << row.order << ',';
    if (row.failed)
      out << ",,,";
    else
      out << format_number(row.errors.l2) << ',' << format_number(row.errors.h1) << ','
          << format_number(row.errors.linf) << ',';
    out << format_number(row.wall_seconds) << '\n';
  }
}

void write_table_json(std::ostream& out, const ConvergenceTable& table) {
  json doc;
  doc["resolution_label"] = table.resolution_label;
  doc["rows"] = json::array();
  for (const auto& row : table.rows) {
    json r = {{"resolution", row.resolution},
              {"order", row.order},
              {"h", row.h},
              {"wall_seconds", row.wall_seconds},
              {"failed", row.failed}};
    if (row.failed) {
      r["failure_reason"] = row.failure_reason;
    } else {
      r["errors"] = error_json(row.errors);
      r["observed_order"] = {{"l2", optional_json(row.order_l2)},
                             {"h1", optional_json(row.order_h1)},
                             {"linf", optional_json(row.order_linf)}};
    }
    doc["rows"].push_back(std::move(r));
  }
  doc["least_squares_order"] = json::array();
  for (const auto& s : table.slopes)
    doc["least_squares_order"].push_back({{"order", s.order},
                                          {"l2", optional_json(s.l2)},
                                          {"h1", optional_json(s.h1)},
                                          {"linf", optional_json(s.linf)}});
  out << doc.dump(2) << '\n';
}

}  // namespace ratemig
