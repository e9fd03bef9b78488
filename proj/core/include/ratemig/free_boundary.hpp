// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ratemig/banded.hpp"
#include "ratemig/field.hpp"
#include "ratemig/mesh.hpp"
#include "ratemig/model.hpp"
#include "ratemig/stepping.hpp"

namespace ratemig {

/// A located threshold crossing u_h(x) = gamma e^{-delta t}.
struct CrossingResult {
  double location = 0;
  double residual = 0;    ///< |u_h(location) - threshold|
  int iterations = 0;
  bool multiple = false;  ///< more than one crossing existed; location is the leftmost
};

/// Scans the nodal values of the field for sign changes of
/// u - gamma e^{-delta t} and polishes the leftmost bracket with safeguarded
/// Newton to |residual| <= 1e-12.  Returns nullopt when no sign change
/// exists.
std::optional<CrossingResult> detect_crossing(const SolutionField& field, double t,
                                              const ModelParams& params);

/// Discrete Green function of a step system at a source point: the solution
/// g of B^T g = e(s) with load e_i = N_i(s).  By transposition
/// g . (B u) = u_h(s) for every coefficient vector u, which is what makes
/// the dual boundary search consistent with direct evaluation.
struct GreenVector {
  std::vector<double> coefficients;
  double source_point = 0;
};

/// Solves the transposed step system for the Green vector at source_point.
GreenVector green_vector(const BandedMatrix& step_system, const Mesh& mesh, double source_point);

/// Result of the dual (Green-function) root search.
struct GreenRootResult {
  double root = 0;
  double residual = 0;        ///< |F| at the root, F(s) = g(s) . rhs - threshold
  int iterations = 0;         ///< accepted Newton updates (bisection steps included)
  int full_steps = 0;         ///< accepted undamped (lambda = 1) Newton updates
  int damped_steps = 0;       ///< accepted updates that needed damping
  bool used_bisection = false;
};

/// Finds s with u_h(s) = threshold(t) without forming u_h: each iterate
/// solves the transposed step system for the Green vector (and once more for
/// the derivative load N_i'(s)) and Newton-updates F(s) = g(s) . rhs -
/// threshold.  Damping halves the step until |F| decreases; past the 2^-10
/// floor a bracketed bisection takes over.  Throws RootFailureError with the
/// last iterate after 50 iterations without convergence.
GreenRootResult boundary_root_green(const BandedMatrix& step_system, std::span<const double> rhs,
                                    const Mesh& mesh, double t, const ModelParams& params,
                                    double x0);

enum class BoundaryMethod { direct, green, both };

struct BoundaryEntry {
  double time = 0;
  double location = 0;
  BoundaryMethod method = BoundaryMethod::direct;
  int iterations = 0;
  double residual = 0;
  bool converged = true;
  bool multiple = false;
};

/// Free-boundary trajectory over a run, with method-comparison and Newton
/// acceptance statistics aggregated across the steps.
struct FreeBoundaryPath {
  std::vector<BoundaryEntry> entries;
  double max_method_discrepancy = 0;  ///< both-mode: max |direct - green| where both converged
  int attempted = 0;                  ///< root searches attempted (crossing present)
  int converged = 0;                  ///< of those, how many converged
  int green_full_steps = 0;           ///< undamped Newton updates across green searches
  int green_total_steps = 0;          ///< all accepted Newton updates across green searches

  double convergence_fraction() const {
    return attempted == 0 ? 1.0 : static_cast<double>(converged) / attempted;
  }
};

struct TrackOptions {
  bool warm_start = true;  ///< false restarts every search from ln(gamma)
};

/// Locates the free boundary at every time level of a run.  The direct
/// method evaluates the stored fields; the green method replays each step
/// system (same lagged assembly as the solver) and searches through the
/// transposed solves.  Level 0 is always located directly since no step
/// system exists there.  Missing crossings are recorded as gaps, root
/// failures as unconverged entries.
FreeBoundaryPath track_boundary(const SolutionHistory& history, const ModelParams& params,
                                BoundaryMethod method, const TrackOptions& options = {});

}  // namespace ratemig
