#include "varnorm/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "varnorm/root_finding.hpp"

namespace varnorm {

double phi(double p, double t) {
  if (t < 0.0) throw std::invalid_argument("phi: t must be nonnegative");
  if (p == kInf) return t <= 1.0 ? 0.0 : kInf;
  if (t == 0.0) return 0.0;
  return std::pow(t, p);
}

double modular(const SampledFunction& f, const ExponentField& p, double lambda) {
  require_same_grid(f.grid(), p.grid(), "modular");
  if (!(lambda > 0.0)) throw std::invalid_argument("modular: lambda must be positive");
  const auto& grid = *f.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = phi(p[i], f.abs(i) / lambda);
    if (v == kInf) return kInf;
    sum += grid.measure(i) * v;
  }
  return sum;
}

namespace {

double finite_part(std::span<const double> moduli, const ExponentField& p, double lambda) {
  const auto& grid = *p.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] == 0.0 || p.is_infinite(i)) continue;
    sum += grid.measure(i) * std::pow(moduli[i] / lambda, p[i]);
  }
  return sum;
}

// Moves lambda up by ulps until the directly summed modular is <= 1.
double settle_feasible(std::span<const double> moduli, const ExponentField& p, double lambda) {
  for (int i = 0; i < 64 && finite_part(moduli, p, lambda) > 1.0; ++i) {
    lambda = std::nextafter(lambda, kInf);
  }
  return lambda;
}

}  // namespace

double luxemburg_norm(std::span<const double> moduli, const ExponentField& p) {
  if (moduli.size() != p.size()) throw std::invalid_argument("luxemburg_norm: size mismatch");
  const auto& grid = *p.grid();
  double cap = 0.0;
  std::vector<ExpTerm> terms;
  terms.reserve(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const double v = moduli[i];
    if (v == 0.0) continue;
    if (p.is_infinite(i)) {
      cap = std::max(cap, v);
    } else {
      // measure * (v / lambda)^p with s = log lambda
      terms.push_back({std::log(grid.measure(i)) + p[i] * std::log(v), p[i]});
    }
  }
  if (terms.empty()) return cap;
  const double root = settle_feasible(moduli, p, std::exp(solve_exp_sum(terms, 0.0)));
  return std::max(cap, root);
}

double luxemburg_norm(const SampledFunction& f, const ExponentField& p) {
  require_same_grid(f.grid(), p.grid(), "luxemburg_norm");
  return luxemburg_norm(f.abs_values(), p);
}

double indicator_norm(std::span<const std::uint8_t> mask, const ExponentField& p) {
  if (mask.size() != p.size()) throw std::invalid_argument("indicator_norm: size mismatch");
  const auto& grid = *p.grid();
  double cap = 0.0;
  std::vector<ExpTerm> terms;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    if (p.is_infinite(i)) {
      cap = 1.0;
    } else {
      terms.push_back({std::log(grid.measure(i)), p[i]});
    }
  }
  if (terms.empty()) return cap;
  return std::max(cap, std::exp(solve_exp_sum(terms, 0.0)));
}

}  // namespace varnorm
