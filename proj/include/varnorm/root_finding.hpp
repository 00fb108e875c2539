#ifndef VARNORM_ROOT_FINDING_HPP
#define VARNORM_ROOT_FINDING_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

namespace varnorm {

inline constexpr double kRelativeTolerance = 1e-12;
inline constexpr int kMaxIterations = 200;

// One term exp(log_coeff - rate * s) of a decreasing exponential sum.
struct ExpTerm {
  double log_coeff;
  double rate;  // > 0
};

// log(sum_i exp(log_coeff_i - rate_i * s)), evaluated stably.
double log_exp_sum(std::span<const ExpTerm> terms, double s);

// The root s* of log_exp_sum(terms, s) = log_rhs. The map is convex and strictly
// decreasing, so Newton started left of the root climbs monotonically inside a
// bisection bracket. The returned point is on the feasible side:
// log_exp_sum(terms, s*) <= log_rhs. Empty term lists give -inf.
double solve_exp_sum(std::span<const ExpTerm> terms, double log_rhs);

// Smallest x in [lo, hi] with feasible(x), for a predicate that is monotone
// (false below a threshold, true above). Bisection on log x; returns the
// feasible endpoint once hi/lo - 1 <= rel_tol. Requires 0 < lo < hi,
// feasible(hi) and !feasible(lo).
template <typename Feasible>
double bisect_threshold(Feasible&& feasible, double lo, double hi,
                        double rel_tol = kRelativeTolerance, int max_iter = kMaxIterations) {
  for (int it = 0; it < max_iter && hi > lo * (1.0 + rel_tol); ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi)) break;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Expands [guess/2^j, guess*2^j] until it brackets the threshold of a
// monotone predicate. Returns {lo, hi} with !feasible(lo), feasible(hi);
// lo == 0 when every tested point was feasible.
template <typename Feasible>
std::pair<double, double> bracket_threshold(Feasible&& feasible, double guess,
                                            int max_doublings = 2000) {
  if (!(guess > 0.0) || !std::isfinite(guess)) {
    throw std::invalid_argument("bracket_threshold: guess must be positive and finite");
  }
  double x = guess;
  if (feasible(x)) {
    for (int i = 0; i < max_doublings; ++i) {
      const double y = 0.5 * x;
      if (y == 0.0) return {0.0, x};
      if (!feasible(y)) return {y, x};
      x = y;
    }
    return {0.0, x};
  }
  for (int i = 0; i < max_doublings; ++i) {
    const double y = 2.0 * x;
    if (!std::isfinite(y)) break;
    if (feasible(y)) return {x, y};
    x = y;
  }
  throw std::runtime_error("bracket_threshold: no feasible point found");
}

}  // namespace varnorm

#endif  // VARNORM_ROOT_FINDING_HPP
