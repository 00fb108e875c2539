#ifndef VARNORM_REARRANGEMENT_HPP
#define VARNORM_REARRANGEMENT_HPP

#include <vector>

#include "varnorm/core_model.hpp"

namespace varnorm {

// Right-continuous step function on [0, inf): values[i] on
// [breakpoints[i], breakpoints[i+1]), the last value extends to infinity.
// breakpoints[0] == 0.
struct StepFunction {
  std::vector<double> breakpoints;
  std::vector<double> values;

  double operator()(double t) const;
  // Left limit at t > 0.
  double left_limit(double t) const;
  // Integral over [a, b]; inf if the last plateau is nonzero and b = inf.
  double integral(double a, double b) const;

  bool operator==(const StepFunction&) const = default;
};

// mu_f(s) = measure{|f| > s}.
StepFunction distribution(const SampledFunction& f);

// Distribution function of a step function on [0, inf) with Lebesgue measure;
// the last plateau must be zero.
StepFunction distribution(const StepFunction& g);

// f*(t) = inf{s > 0 : mu_f(s) <= t}.
StepFunction decreasing_rearrangement(const SampledFunction& f);

// Classical Lorentz quasi-norm ||t^{1/p} f*(t)||_{L_q(dt/t)}, evaluated in
// closed form plateau by plateau. Returns inf when the integral diverges.
double classical_lorentz_norm(const SampledFunction& f, double p, double q);

// p^{1/q}: the factor between the rearrangement form and the level-set form
// of the constant-exponent Lorentz norm. Equal to 1 for q = inf.
double lorentz_normalization_factor(double p, double q);

}  // namespace varnorm

#endif  // VARNORM_REARRANGEMENT_HPP
