// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>

#include "ratemig/convergence.hpp"
#include "ratemig/free_boundary.hpp"
#include "ratemig/stepping.hpp"

namespace ratemig {

/// Shortest exact decimal rendering of a double (17 significant digits, '.'
/// decimal separator, locale independent).
std::string format_number(double value);

/// Long-format solution surface: header "t,x,u", one row per (level, node).
void write_surface_csv(std::ostream& out, const SolutionHistory& history);

/// Solution surface as JSON arrays: node coordinates, level times, and one
/// coefficient row per level.
void write_surface_json(std::ostream& out, const SolutionHistory& history);

/// Per-step diagnostics table with header
/// "t,linear_residual,sigma_min,sigma_max,summand_min,l2_norm".
void write_steps_csv(std::ostream& out, const SolutionHistory& history);

/// Step diagnostics plus the stability report in one JSON document.
void write_run_json(std::ostream& out, const SolutionHistory& history,
                    const StabilityReport& stability);

/// Free-boundary path with header "t,s_f,method,iterations,residual".
void write_path_csv(std::ostream& out, const FreeBoundaryPath& path);

/// Path entries plus the method-discrepancy and convergence summary.
void write_path_json(std::ostream& out, const FreeBoundaryPath& path);

/// Convergence table with header "resolution,order,l2,h1,linf,time_s".
void write_table_csv(std::ostream& out, const ConvergenceTable& table);

/// Convergence rows with observed orders and the least-squares slopes.
void write_table_json(std::ostream& out, const ConvergenceTable& table);

}  // namespace ratemig
