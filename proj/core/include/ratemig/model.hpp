// SPDX-License-Identifier: MIT
#pragma once

namespace ratemig {

/// Parameters of the regularized rating-migration bond model.
///
/// The bond value u(x, t) on the log-price window [x_min, x_max] follows
///   u_t = (sigma^2 / 2) u_xx + (rate + sigma^2 / 2) u_x,
/// where the volatility switches smoothly between the two grade levels as u
/// crosses the discount threshold gamma * exp(-delta * t).  epsilon is the
/// width of that smoothed switch in units of u.
struct ModelParams {
  double rate = 0.5;
  double sigma_low_grade = 0.3;   ///< volatility level reached at and above the threshold
  double sigma_high_grade = 0.2;  ///< volatility level below the transition band
  double gamma = 0.8;             ///< threshold level at t = 0, as a fraction of face value
  double delta = 0.005;           ///< threshold decay rate
  double epsilon = 1e-2;          ///< width of the volatility transition band
  double maturity = 1.0;
  double x_min = -4.0;
  double x_max = 4.0;
  double face_value = 1.0;

  /// Throws InvalidParameterError naming the offending field when a value is
  /// outside its admissible range.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Quintic-smoothstep regularization of the unit step.  Returns 0 for
/// x <= -eps, 1 for x >= 0 and the C^2 smoothstep s^3 (10 - 15 s + 6 s^2)
/// with s = (x + eps) / eps in between.
double smoothed_heaviside(double x, double eps);

/// First derivative of smoothed_heaviside in x.  Bounded by 15 / (8 eps).
double smoothed_heaviside_deriv(double x, double eps);

/// Second derivative of smoothed_heaviside in x.  Bounded by 10 / (sqrt(3) eps^2).
double smoothed_heaviside_deriv2(double x, double eps);

/// Volatility as a function of the gap u - threshold: sigma_high_grade below
/// the transition band, blending up to sigma_low_grade once the gap is
/// nonnegative.
double volatility_for_gap(double gap, const ModelParams& params);

/// Volatility at bond value u and time t, using the decayed threshold.
double effective_volatility(double u, double t, const ModelParams& params);

/// Normalized initial bond profile min(1, exp(x)).
double initial_condition(double x);

/// The discount threshold gamma * exp(-delta * t) separating the grades.
class ThresholdCurve {
 public:
  ThresholdCurve(double gamma, double delta);

  /// Threshold at time t >= 0; strictly decreasing for delta > 0.
  double value(double t) const;

  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }

 private:
  double gamma_;
  double delta_;
};

}  // namespace ratemig
