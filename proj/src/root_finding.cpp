#include "varnorm/root_finding.hpp"

#include <algorithm>
#include <limits>

namespace varnorm {

namespace {

struct Evaluation {
  double value;  // log sum
  double slope;  // derivative in s, negative
};

Evaluation evaluate(std::span<const ExpTerm> terms, double s) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) top = std::max(top, t.log_coeff - t.rate * s);
  double sum = 0.0, weighted = 0.0;
  for (const auto& t : terms) {
    const double w = std::exp(t.log_coeff - t.rate * s - top);
    sum += w;
    weighted += w * t.rate;
  }
  return {top + std::log(sum), -weighted / sum};
}

}  // namespace

double log_exp_sum(std::span<const ExpTerm> terms, double s) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  return evaluate(terms, s).value;
}

double solve_exp_sum(std::span<const ExpTerm> terms, double log_rhs) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();

  // At lo one term alone reaches the right-hand side; at hi every term is at
  // most rhs/n.
  const double log_n = std::log(static_cast<double>(terms.size()));
  double lo = -std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    lo = std::max(lo, (t.log_coeff - log_rhs) / t.rate);
    hi = std::max(hi, (t.log_coeff + log_n - log_rhs) / t.rate);
  }
  // Newton from lo never passes the root in exact arithmetic; the midpoint is
  // only a guard against rounding pushing an iterate past hi.
  auto at_lo = evaluate(terms, lo);
  double s = hi;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double g = at_lo.value - log_rhs;
    if (g <= 0.0) {
      s = lo;
      break;
    }
    double next = lo - g / at_lo.slope;
    const bool newton = next < hi;
    if (!newton) next = 0.5 * (lo + hi);
    if (!(next > lo)) {
      s = lo;  // root found to the last bit
      break;
    }
    const auto e = evaluate(terms, next);
    if (e.value - log_rhs > 0.0) {
      lo = next;
      at_lo = e;
    } else {
      hi = next;
      if (newton) {
        s = next;
        break;
      }
    }
    s = hi;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lo))) break;
  }

  // Step onto the feasible side of the root.
  double nudge = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s));
  for (int it = 0; it < 200 && log_exp_sum(terms, s) > log_rhs; ++it) {
    s += nudge;
    nudge *= 2.0;
  }
  return s;
}

}  // namespace varnorm
