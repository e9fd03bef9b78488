// SPDX-License-Identifier: MIT
#include "ratemig/model.hpp"

#include <cmath>
#include <string>

#include "ratemig/errors.hpp"

namespace ratemig {

void ModelParams::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidParameterError(msg); };
  if (!(sigma_high_grade > 0.0))
    fail("sigma_high_grade must be positive, got " + std::to_string(sigma_high_grade));
  // Equal grades are allowed: the degenerate sigma_low == sigma_high case is
  // the constant-coefficient configuration the oracle tests rely on.
  if (!(sigma_low_grade >= sigma_high_grade))
    fail("sigma_low_grade must be >= sigma_high_grade, got " + std::to_string(sigma_low_grade) +
         " < " + std::to_string(sigma_high_grade));
  if (!(gamma > 0.0 && gamma < 1.0))
    fail("gamma must lie in (0, 1), got " + std::to_string(gamma));
  if (!(delta >= 0.0)) fail("delta must be nonnegative, got " + std::to_string(delta));
  if (!(epsilon > 0.0)) fail("epsilon must be positive, got " + std::to_string(epsilon));
  if (!(maturity >= 0.0)) fail("maturity must be nonnegative, got " + std::to_string(maturity));
  if (!(x_min < x_max))
    fail("window requires x_min < x_max, got [" + std::to_string(x_min) + ", " +
         std::to_string(x_max) + "]");
  if (!(face_value > 0.0)) fail("face_value must be positive, got " + std::to_string(face_value));
  if (!std::isfinite(rate)) fail("rate must be finite");
}

namespace {

// Smoothstep s^3 (10 - 15 s + 6 s^2) on [0, 1] and its derivatives.
inline double smoothstep(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }
inline double smoothstep_d1(double s) {
  const double w = s * (1.0 - s);
  return 30.0 * w * w;
}
inline double smoothstep_d2(double s) { return 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s); }

inline void check_eps(double eps) {
  if (!(eps > 0.0))
    throw InvalidParameterError("smoothed_heaviside width eps must be positive, got " +
                                std::to_string(eps));
}

}  // namespace

double smoothed_heaviside(double x, double eps) {
  check_eps(eps);
  if (x <= -eps) return 0.0;
  if (x >= 0.0) return 1.0;
  return smoothstep((x + eps) / eps);
}

double smoothed_heaviside_deriv(double x, double eps) {
  check_eps(eps);
  if (x <= -eps || x >= 0.0) return 0.0;
  return smoothstep_d1((x + eps) / eps) / eps;
}

double smoothed_heaviside_deriv2(double x, double eps) {
  check_eps(eps);
  if (x <= -eps || x >= 0.0) return 0.0;
  return smoothstep_d2((x + eps) / eps) / (eps * eps);
}

double volatility_for_gap(double gap, const ModelParams& params) {
  return params.sigma_high_grade +
         (params.sigma_low_grade - params.sigma_high_grade) *
             smoothed_heaviside(gap, params.epsilon);
}

double effective_volatility(double u, double t, const ModelParams& params) {
  const double threshold = params.gamma * std::exp(-params.delta * t);
  return volatility_for_gap(u - threshold, params);
}

double initial_condition(double x) { return x >= 0.0 ? 1.0 : std::exp(x); }

ThresholdCurve::ThresholdCurve(double gamma, double delta) : gamma_(gamma), delta_(delta) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidParameterError("threshold gamma must lie in (0, 1), got " + std::to_string(gamma));
  if (!(delta >= 0.0))
    throw InvalidParameterError("threshold delta must be nonnegative, got " +
                                std::to_string(delta));
}

double ThresholdCurve::value(double t) const {
  if (t < 0.0) throw DomainError("threshold requested at negative time " + std::to_string(t));
  return gamma_ * std::exp(-delta_ * t);
}

}  // namespace ratemig
