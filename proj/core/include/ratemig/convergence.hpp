// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratemig/model.hpp"
#include "ratemig/norms.hpp"

namespace ratemig {

/// One refinement-study run: errors against the study's reference at the
/// final time, the resolution that produced them, and the observed order
/// against the previous row of the same element-order group.
struct ConvergenceRow {
  int resolution = 0;  ///< element count (spatial) or step count (temporal)
  int order = 1;       ///< element order of the run
  double h = 0;        ///< mesh width (spatial) or step size (temporal)
  ErrorReport errors;
  std::optional<double> order_l2, order_h1, order_linf;
  double wall_seconds = 0;
  bool failed = false;
  std::string failure_reason;
};

/// Least-squares slope of log(error) against log(h) within one element-order
/// group; absent with fewer than two successful rows.
struct GroupSlopes {
  int order = 1;
  std::optional<double> l2, h1, linf;
};

struct ConvergenceTable {
  std::string resolution_label;  ///< "n_elements" or "n_steps"
  std::vector<ConvergenceRow> rows;
  std::vector<GroupSlopes> slopes;
};

struct StudyOptions {
  int n_threads = 1;  ///< concurrent rows; each row then assembles serially
};

/// Mesh refinement study at a fixed step count.  The reference is a run at
/// order max(orders)+1 on twice the finest mesh with four times the steps,
/// so the measured errors are spatial down to a small shared temporal floor.
/// Rows that throw are recorded as failed and skipped by the order fits.
ConvergenceTable spatial_convergence_study(const ModelParams& params, std::span<const int> orders,
                                           std::span<const int> element_counts, int nt_fixed,
                                           const StudyOptions& options = {});

/// Step refinement study on a fixed mesh.  The reference shares the mesh
/// with eight times the finest step count, cancelling the spatial error.
ConvergenceTable temporal_convergence_study(const ModelParams& params,
                                            std::span<const int> nt_list, int ne_fixed,
                                            int order_fixed, const StudyOptions& options = {});

}  // namespace ratemig
