#include "varnorm/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "varnorm/lebesgue.hpp"

namespace varnorm {

LevelNormProfile::LevelNormProfile(const SampledFunction& f, const ExponentField& p) {
  auto h = level_set_norms(f, p);
  levels_ = std::move(h.levels);
  norms_ = std::move(h.norms);
}

double LevelNormProfile::h(double lambda) const {
  if (!(lambda > 0.0)) throw std::domain_error("LevelNormProfile::h needs lambda > 0");
  // Plateau j covers (w_{j-1}, w_j].
  const auto it = std::lower_bound(levels_.begin(), levels_.end(), lambda);
  if (it == levels_.end()) return 0.0;
  return norms_[static_cast<std::size_t>(it - levels_.begin())];
}

double LevelNormProfile::f_star(double t) const {
  if (!(t > 0.0)) throw std::domain_error("LevelNormProfile::f_star needs t > 0");
  // Largest level whose plateau still reaches t.
  for (std::size_t j = levels_.size(); j-- > 0;) {
    if (norms_[j] >= t) return levels_[j];
  }
  return 0.0;
}

InterpolationParams::InterpolationParams(double theta, double q) : theta(theta), q(q) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("InterpolationParams: theta must lie in (0, 1)");
  }
  if (!(q > 0.0)) throw std::invalid_argument("InterpolationParams: q must be positive");
}

ExponentField tilde_p(const ExponentField& p, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("tilde_p: theta must lie in (0, 1)");
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.is_infinite(i) ? kInf : p[i] / (1.0 - theta);
  return ExponentField(p.grid(), std::move(out));
}

KFunctional::KFunctional(const SampledFunction& f, const ExponentField& p, Endpoint endpoint)
    : moduli_(f.abs_values().begin(), f.abs_values().end()),
      p_(p),
      endpoint_(endpoint),
      convex_(endpoint == Endpoint::WeakLorentz || p.p_minus() >= 1.0),
      smooth_(endpoint == Endpoint::Lebesgue && p.p_minus() >= 1.0 && !p.has_infinite()) {
  require_same_grid(f.grid(), p.grid(), "KFunctional");
  if (endpoint_ == Endpoint::WeakLorentz) {
    auto h = level_set_norms(f, p);
    weak_levels_ = std::move(h.levels);
    weak_norms_ = std::move(h.norms);
  }
  candidates_.push_back(0.0);
  std::vector<double> sorted;
  for (double v : moduli_) {
    if (v > 0.0) sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  candidates_.insert(candidates_.end(), sorted.begin(), sorted.end());
  candidate_norms_.reserve(candidates_.size());
  for (double mu : candidates_) candidate_norms_.push_back(truncation_norm(mu));
}

double KFunctional::truncation_norm(double mu) const {
  if (endpoint_ == Endpoint::WeakLorentz) {
    double sup = 0.0;
    for (std::size_t j = 0; j < weak_levels_.size(); ++j) {
      if (weak_levels_[j] > mu) sup = std::max(sup, (weak_levels_[j] - mu) * weak_norms_[j]);
    }
    return sup;
  }
  std::vector<double> cut(moduli_.size());
  for (std::size_t i = 0; i < cut.size(); ++i) cut[i] = std::max(moduli_[i] - mu, 0.0);
  return luxemburg_norm(cut, p_);
}

double KFunctional::slope(double mu, double lambda, bool include_level) const {
  // Implicit differentiation of sum m (g/lambda)^p = 1 with g = (|f| - mu)_+.
  double num = 0.0, den = 0.0;
  const auto& grid = *p_.grid();
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const double g = moduli_[i] - mu;
    if (g < 0.0 || (g == 0.0 && !include_level)) continue;
    const double w = grid.measure(i) * p_[i];
    const double r = g / lambda;
    num += w * (p_[i] == 1.0 ? 1.0 : std::pow(r, p_[i] - 1.0));
    den += w * std::pow(r, p_[i]);
  }
  return -num / den;
}

std::vector<double> KFunctional::kinks() const {
  std::vector<double> out;
  if (!smooth_) return out;
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (!(candidate_norms_[i] > 0.0)) continue;
    out.push_back(-slope(candidates_[i], candidate_norms_[i], false));
    if (i > 0) out.push_back(-slope(candidates_[i], candidate_norms_[i], true));
  }
  return out;
}

KValue KFunctional::minimize(double t) const {
  if (!(t > 0.0)) throw std::domain_error("k_functional: t must be positive");
  const std::size_t n = candidates_.size();
  std::size_t best = 0;
  KValue out{candidate_norms_[0], 0.0};
  for (std::size_t i = 1; i < n; ++i) {
    const double g = candidate_norms_[i] + t * candidates_[i];
    if (g < out.value) {
      out = {g, candidates_[i]};
      best = i;
    }
  }
  if (n < 2) return out;

  const auto objective = [&](double mu) { return truncation_norm(mu) + t * mu; };
  const auto refine = [&](std::size_t a, std::size_t b) {
    const auto [mu, g] = boost::math::tools::brent_find_minima(
        objective, candidates_[a], candidates_[b], std::numeric_limits<double>::digits / 2);
    if (g < out.value) out = {g, mu};
  };
  // Root of the derivative t + N'(mu) between adjacent candidates a < b.
  const auto solve = [&](std::size_t a, std::size_t b) {
    if (!(candidate_norms_[b] > 0.0)) return refine(a, b);
    const double da = t + slope(candidates_[a], candidate_norms_[a], false);
    const double db = t + slope(candidates_[b], candidate_norms_[b], true);
    if (!(da < 0.0 && db > 0.0)) return;  // minimum at a candidate
    const auto derivative = [&](double mu) { return t + slope(mu, truncation_norm(mu), false); };
    std::uintmax_t iters = 60;
    const auto [x0, x1] = boost::math::tools::toms748_solve(derivative, candidates_[a], candidates_[b], da, db,
                                                            boost::math::tools::eps_tolerance<double>(40), iters);
    const double mu = 0.5 * (x0 + x1);
    const double g = truncation_norm(mu) + t * mu;
    if (g < out.value) out = {g, mu};
  };
  if (smooth_) {
    if (best > 0) solve(best - 1, best);
    if (best + 1 < n) solve(best, best + 1);
  } else if (convex_) {
    // The candidate minimum sits next to the continuous one.
    refine(best == 0 ? 0 : best - 1, std::min(best + 1, n - 1));
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) refine(i, i + 1);
  }
  return out;
}

double k_functional(const SampledFunction& f, double t, const ExponentField& p, Endpoint endpoint) {
  return KFunctional(f, p, endpoint)(t);
}

namespace {

constexpr double kWindowTolerance = 1e-12;
constexpr int kMaxWindowSteps = 2000;

}  // namespace

InterpolationResult real_interp_norm(const SampledFunction& f, const InterpolationParams& params,
                                     const ExponentField& p, Endpoint endpoint) {
  InterpolationResult out;
  if (f.is_zero()) return out;
  const KFunctional K(f, p, endpoint);
  const double a = K.sup_abs();
  const double b = K.norm();
  const double theta = params.theta;
  const double q = params.q;

  // K(t)/t is non-increasing and K(t) <= t a, so K(T) = T a forces K(t) = t a
  // for every t <= T. Likewise K(T) = b forces K(t) = b for t >= T.
  double t_lo = b / a;
  int steps = 0;
  while (K(t_lo) < (1.0 - kWindowTolerance) * t_lo * a && steps++ < kMaxWindowSteps) t_lo *= 0.5;
  double t_hi = b / a;
  int steps_hi = 0;
  while (K(t_hi) < (1.0 - kWindowTolerance) * b && steps_hi++ < kMaxWindowSteps) t_hi *= 2.0;
  out.window_found = steps <= kMaxWindowSteps && steps_hi <= kMaxWindowSteps;
  out.t_lo = t_lo;
  out.t_hi = t_hi;

  const double u_lo = std::log(t_lo);
  const double u_hi = std::log(t_hi);

  if (q == kInf) {
    const auto weighted = [&](double u) { return std::exp(std::log(K(std::exp(u))) - theta * u); };
    double sup = std::max(a * std::pow(t_lo, 1.0 - theta), b * std::pow(t_hi, -theta));
    if (u_hi > u_lo) {
      const int n = std::max(2, static_cast<int>(std::ceil((u_hi - u_lo) / std::log(2.0) * 32.0)));
      const double du = (u_hi - u_lo) / n;
      int best = 0;
      double best_value = -1.0;
      for (int i = 0; i <= n; ++i) {
        const double v = weighted(u_lo + i * du);
        if (v > best_value) {
          best_value = v;
          best = i;
        }
      }
      const double left = u_lo + std::max(0, best - 1) * du;
      const double right = u_lo + std::min(n, best + 1) * du;
      const auto [u, neg] = boost::math::tools::brent_find_minima(
          [&](double x) { return -weighted(x); }, left, right,
          std::numeric_limits<double>::digits / 2);
      sup = std::max({sup, best_value, -neg});
      (void)u;
    }
    out.value = sup;
    return out;
  }

  double sum = std::exp(q * std::log(a) + (1.0 - theta) * q * u_lo) / ((1.0 - theta) * q) +
               std::exp(q * std::log(b) - theta * q * u_hi) / (theta * q);
  const auto integrand = [&](double u) {
    const double k = K(std::exp(u));
    return k > 0.0 ? std::exp(q * (std::log(k) - theta * u)) : 0.0;
  };
  // Integrate per octave, split further where K has kinks.
  std::vector<double> cuts;
  for (double u = u_lo; u < u_hi; u += std::log(2.0)) cuts.push_back(u);
  for (double t : K.kinks()) {
    const double u = std::log(t);
    if (u > u_lo && u < u_hi) cuts.push_back(u);
  }
  cuts.push_back(u_hi);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    sum += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, cuts[i], cuts[i + 1], 10,
                                                                        1e-8);
  }
  out.value = std::pow(sum, 1.0 / q);
  return out;
}

VerificationReport verify_interpolation_theorem(std::span<const SampledFunction> family,
                                                const ExponentField& p,
                                                const InterpolationParams& params) {
  if (p.has_infinite()) {
    throw std::invalid_argument("verify_interpolation_theorem: needs p_plus < inf");
  }
  VerificationReport report("interpolation", 1e-6);
  const auto pt = tilde_p(p, params.theta);
  for (const auto& f : family) {
    if (f.is_zero()) {
      report.record(0.0);
      continue;
    }
    const double strong = real_interp_norm(f, params, p, Endpoint::Lebesgue).value;
    const double weak = real_interp_norm(f, params, p, Endpoint::WeakLorentz).value;
    const double target = lorentz_norm_qconst(f, pt, params.q);
    report.record(relative_slack(weak, strong));
    report.observe("ratio", strong / target);
    report.observe("weak_ratio", weak / target);
  }
  return report;
}

}  // namespace varnorm
