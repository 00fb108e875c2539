#ifndef VARNORM_INTERPOLATION_HPP
#define VARNORM_INTERPOLATION_HPP

#include <span>
#include <vector>

#include "varnorm/core_model.hpp"
#include "varnorm/lorentz_variable.hpp"

namespace varnorm {

// h(lambda) = ||chi_{|f| >= lambda}||_p and f_*(t) = sup{lambda > 0 : h(lambda) >= t}.
class LevelNormProfile {
 public:
  LevelNormProfile(const SampledFunction& f, const ExponentField& p);

  const std::vector<double>& levels() const { return levels_; }  // ascending
  const std::vector<double>& norms() const { return norms_; }    // non-increasing

  double h(double lambda) const;
  double f_star(double t) const;

 private:
  std::vector<double> levels_;
  std::vector<double> norms_;
};

struct InterpolationParams {
  double theta;
  double q;

  InterpolationParams(double theta, double q);
};

// 1/p~ = (1 - theta)/p, cell by cell.
ExponentField tilde_p(const ExponentField& p, double theta);

// The first space of the couple (X0, L_inf).
enum class Endpoint {
  Lebesgue,     // L_p
  WeakLorentz,  // L_{p,inf}, sup_lambda lambda ||chi_{|f| > lambda}||_p
};

struct KValue {
  double value;
  double mu;  // truncation height of the best split found
};

// K(f, t; X0, L_inf) = inf_mu ||(|f| - mu)_+||_{X0} + t mu. Norms of the
// truncations at the kinks (distinct values of |f|) are cached, so a K
// evaluation costs one scan plus a local 1-D minimization.
class KFunctional {
 public:
  KFunctional(const SampledFunction& f, const ExponentField& p,
              Endpoint endpoint = Endpoint::Lebesgue);

  KValue minimize(double t) const;
  double operator()(double t) const { return minimize(t).value; }

  // ||(|f| - mu)_+||_{X0}.
  double truncation_norm(double mu) const;
  double sup_abs() const { return candidates_.back(); }
  double norm() const { return candidate_norms_.front(); }
  bool convex() const { return convex_; }
  // Values of t where K may fail to be smooth: t = -N'(c) at each candidate c,
  // N the truncation norm. Empty unless the L_p endpoint has finite p >= 1.
  std::vector<double> kinks() const;

 private:
  // d/dmu of truncation_norm at mu, where lambda = truncation_norm(mu) > 0;
  // the left derivative when include_level, else the right one.
  double slope(double mu, double lambda, bool include_level) const;

  std::vector<double> moduli_;
  ExponentField p_;
  Endpoint endpoint_;
  bool convex_;
  bool smooth_;  // finite p >= 1 with the L_p endpoint: truncation norm is C^1 between candidates
  std::vector<double> candidates_;       // 0 and the distinct values of |f|, ascending
  std::vector<double> candidate_norms_;  // truncation_norm at each candidate
  std::vector<double> weak_levels_;      // for the weak endpoint: w_j and
  std::vector<double> weak_norms_;       // ||chi_{|f| >= w_j}||_p
};

double k_functional(const SampledFunction& f, double t, const ExponentField& p,
                    Endpoint endpoint = Endpoint::Lebesgue);

struct InterpolationResult {
  double value = 0.0;
  // Below t_lo K(t) = t sup|f|, above t_hi K(t) = ||f||_{X0}; both tails are
  // integrated in closed form.
  double t_lo = 0.0;
  double t_hi = 0.0;
  bool window_found = true;
};

// ||f||_{(X0, L_inf)_{theta,q}}.
InterpolationResult real_interp_norm(const SampledFunction& f, const InterpolationParams& params,
                                     const ExponentField& p,
                                     Endpoint endpoint = Endpoint::Lebesgue);

// Ratio ||f||_{(L_p, L_inf)_{theta,q}} / ||f||_{L_{p~,q}} over the family
// (constants "ratio_min"/"ratio_max"), plus the check that the weak endpoint
// never exceeds the strong one.
VerificationReport verify_interpolation_theorem(std::span<const SampledFunction> family,
                                                const ExponentField& p,
                                                const InterpolationParams& params);

}  // namespace varnorm

#endif  // VARNORM_INTERPOLATION_HPP
