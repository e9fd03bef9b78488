// SPDX-License-Identifier: MIT
#include "ratemig/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ratemig/assembly.hpp"
#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"
#include "ratemig/quadrature.hpp"

namespace ratemig {

namespace {

constexpr double kRootTol = 1e-12;
constexpr int kMaxIterations = 50;
constexpr double kLambdaFloor = 1.0 / 1024.0;  // 2^-10

// Safeguarded Newton inside a bracket with f(lo) and f(hi) of opposite sign.
// Falls back to bisection whenever the Newton trial leaves the bracket.
template <class F, class DF>
CrossingResult polish_root(F&& f, DF&& df, double lo, double hi, double f_lo, double f_hi) {
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  int it = 0;
  for (; it < 100 && std::abs(fx) > kRootTol; ++it) {
    if ((f_lo < 0.0) == (fx < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    const double d = df(x);
    double trial = d != 0.0 ? x - fx / d : lo;
    if (!(trial > std::min(lo, hi) && trial < std::max(lo, hi))) trial = 0.5 * (lo + hi);
    x = trial;
    fx = f(x);
  }
  return {x, std::abs(fx), it, false};
}

}  // namespace

std::optional<CrossingResult> detect_crossing(const SolutionField& field, double t,
                                              const ModelParams& params) {
  params.validate();
  const double threshold = params.gamma * std::exp(-params.delta * t);
  const auto& nodes = field.mesh().node_coords();
  const auto coeffs = field.coefficients();

  const auto f = [&](double x) { return field.value_at(x) - threshold; };
  const auto df = [&](double x) { return field.derivative_at(x); };

  std::optional<CrossingResult> leftmost;
  int crossings = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double d0 = coeffs[i] - threshold;
    const double d1 = coeffs[i + 1] - threshold;
    std::optional<CrossingResult> here;
    if (d0 == 0.0) {
      if (i == 0 || coeffs[i - 1] - threshold != 0.0) here = CrossingResult{nodes[i], 0.0, 0,
                                                                            false};
    } else if (d0 * d1 < 0.0) {
      here = polish_root(f, df, nodes[i], nodes[i + 1], d0, d1);
    } else if (i + 2 == nodes.size() && d1 == 0.0) {
      here = CrossingResult{nodes[i + 1], 0.0, 0, false};
    }
    if (here) {
      ++crossings;
      if (!leftmost) leftmost = here;
    }
  }
  if (leftmost && crossings > 1) leftmost->multiple = true;
  return leftmost;
}

namespace {

// Load vector e_i = N_i(s) (or the derivative load when derivative is set):
// nonzero only on the element containing s.
std::vector<double> delta_load(const Mesh& mesh, double s, bool derivative) {
  const int e = mesh.locate_element(s);
  const auto [a, b] = mesh.element_span(e);
  const auto basis = reference_basis(mesh.order(), 2.0 * (s - a) / (b - a) - 1.0);
  std::vector<double> load(mesh.dof_count(), 0.0);
  const int base = mesh.first_dof(e);
  const double scale = derivative ? 2.0 / (b - a) : 1.0;
  for (int k = 0; k < basis.count(); ++k)
    load[base + k] = (derivative ? basis.derivatives[k] : basis.values[k]) * scale;
  return load;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

GreenVector green_vector(const BandedMatrix& step_system, const Mesh& mesh, double source_point) {
  if (step_system.size() != mesh.dof_count())
    throw InconsistentInputError("step system size does not match the mesh");
  const BandedLU lu(step_system.transposed());
  return {lu.solve(delta_load(mesh, source_point, false)), source_point};
}

GreenRootResult boundary_root_green(const BandedMatrix& step_system, std::span<const double> rhs,
                                    const Mesh& mesh, double t, const ModelParams& params,
                                    double x0) {
  params.validate();
  if (step_system.size() != mesh.dof_count() ||
      static_cast<int>(rhs.size()) != mesh.dof_count())
    throw InconsistentInputError("step system, rhs and mesh sizes disagree");
  if (!(x0 > mesh.x_min() && x0 < mesh.x_max()))
    throw DomainError("initial guess " + std::to_string(x0) + " outside the open window");

  const double threshold = params.gamma * std::exp(-params.delta * t);
  const BandedLU lu(step_system.transposed());

  const auto value = [&](double s) {
    return dot(lu.solve(delta_load(mesh, s, false)), rhs) - threshold;
  };
  const auto slope = [&](double s) { return dot(lu.solve(delta_load(mesh, s, true)), rhs); };

  const double span = mesh.x_max() - mesh.x_min();
  const double inset = 1e-12 * span;
  const auto clamp_in = [&](double s) {
    return std::clamp(s, mesh.x_min() + inset, mesh.x_max() - inset);
  };

  GreenRootResult result;
  double x = clamp_in(x0);
  double fx = value(x);

  for (int it = 0; it < kMaxIterations; ++it) {
    if (std::abs(fx) <= kRootTol) {
      result.root = x;
      result.residual = std::abs(fx);
      return result;
    }
    const double d = slope(x);
    bool accepted = false;
    if (d != 0.0) {
      const double step = fx / d;
      for (double lambda = 1.0; lambda >= kLambdaFloor; lambda *= 0.5) {
        const double trial = clamp_in(x - lambda * step);
        const double f_trial = value(trial);
        if (std::abs(f_trial) < std::abs(fx)) {
          x = trial;
          fx = f_trial;
          ++result.iterations;
          if (lambda == 1.0)
            ++result.full_steps;
          else
            ++result.damped_steps;
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      // Damping floor hit: bracket the leftmost sign change over the
      // breakpoints and bisect.  Each probe costs one transposed solve, so
      // this path is the safety net, not the common case.
      result.used_bisection = true;
      const auto& bps = mesh.breakpoints();
      double lo = 0, hi = 0, f_lo = 0, f_hi = 0;
      bool found = false;
      double prev_x = bps.front(), prev_f = value(clamp_in(prev_x));
      for (std::size_t i = 1; i < bps.size() && !found; ++i) {
        const double here_x = bps[i];
        const double here_f = value(clamp_in(here_x));
        if (prev_f == 0.0 || prev_f * here_f < 0.0) {
          lo = prev_x;
          hi = here_x;
          f_lo = prev_f;
          f_hi = here_f;
          found = true;
        }
        prev_x = here_x;
        prev_f = here_f;
      }
      if (!found)
        throw RootFailureError("green search found no sign change to bisect", x, std::abs(fx));
      while (hi - lo > 1e-15 * span) {
        const double mid = clamp_in(0.5 * (lo + hi));
        const double f_mid = value(mid);
        ++result.iterations;
        x = mid;
        fx = f_mid;
        if (std::abs(f_mid) <= kRootTol) break;
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
          f_hi = f_mid;
        }
      }
      if (std::abs(fx) <= kRootTol) {
        result.root = x;
        result.residual = std::abs(fx);
        return result;
      }
      throw RootFailureError("green bisection stalled", x, std::abs(fx));
    }
  }
  throw RootFailureError("green root search exceeded " + std::to_string(kMaxIterations) +
                             " iterations",
                         x, std::abs(fx));
}

FreeBoundaryPath track_boundary(const SolutionHistory& history, const ModelParams& params,
                                BoundaryMethod method, const TrackOptions& options) {
  if (history.fields.empty()) throw InvalidParameterError("history holds no solution levels");
  params.validate();

  const auto mesh_ptr = history.fields.front().mesh_ptr();
  const Mesh& mesh = *mesh_ptr;
  const bool want_direct = method != BoundaryMethod::green;
  const bool want_green = method != BoundaryMethod::direct;

  FreeBoundaryPath path;
  const QuadratureRule rule =
      gauss_rule(history.quadrature_points > 0 ? history.quadrature_points : mesh.order() + 1);
  BandedMatrix mass(1, 0, 0);
  bool have_mass = false;
  if (want_green && history.fields.size() > 1) {
    mass = assemble_mass(mesh, rule);
    have_mass = true;
  }

  // Level 0 has no step system; both methods anchor on direct detection.
  std::optional<double> last_direct, last_green;
  if (auto c0 = detect_crossing(history.fields.front(), 0.0, params)) {
    path.entries.push_back({history.fields.front().time_stamp(), c0->location,
                            BoundaryMethod::direct, c0->iterations, c0->residual, true,
                            c0->multiple});
    ++path.attempted;
    ++path.converged;
    last_direct = c0->location;
    last_green = c0->location;
  }

  for (std::size_t n = 1; n < history.fields.size(); ++n) {
    const SolutionField& u_now = history.fields[n];
    const double t_now = u_now.time_stamp();
    std::optional<double> direct_here, green_here;

    if (want_direct) {
      if (auto crossing = detect_crossing(u_now, t_now, params)) {
        ++path.attempted;
        const bool ok = crossing->residual <= kRootTol;
        if (ok) ++path.converged;
        path.entries.push_back({t_now, crossing->location, BoundaryMethod::direct,
                                crossing->iterations, crossing->residual, ok,
                                crossing->multiple});
        if (ok) direct_here = crossing->location;
        last_direct = crossing->location;
      }
    }

    if (want_green) {
      if (!have_mass) {
        mass = assemble_mass(mesh, rule);
        have_mass = true;
      }
      const SolutionField& u_prev = history.fields[n - 1];
      const BandedMatrix op = assemble_operator(mesh, u_prev, u_prev.time_stamp(), params, rule,
                                                history.op_options);
      BandedMatrix system = mass;
      system.add_scaled(op, history.dt);
      std::vector<double> rhs = mass.multiply(u_prev.coefficients());
      apply_dirichlet(system, rhs, history.bc, t_now);

      const double fallback = std::log(params.gamma);
      const double x0 = options.warm_start ? last_green.value_or(last_direct.value_or(fallback))
                                           : fallback;
      ++path.attempted;
      try {
        const GreenRootResult root = boundary_root_green(system, rhs, mesh, t_now, params, x0);
        ++path.converged;
        path.entries.push_back({t_now, root.root, BoundaryMethod::green, root.iterations,
                                root.residual, true, false});
        path.green_full_steps += root.full_steps;
        path.green_total_steps += root.full_steps + root.damped_steps;
        green_here = root.root;
        last_green = root.root;
      } catch (const RootFailureError& err) {
        path.entries.push_back({t_now, err.last_iterate(), BoundaryMethod::green, kMaxIterations,
                                err.last_residual(), false, false});
      }
    }

    if (direct_here && green_here)
      path.max_method_discrepancy =
          std::max(path.max_method_discrepancy, std::abs(*direct_here - *green_here));
  }
  return path;
}

}  // namespace ratemig
