#include "varnorm/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace varnorm {

namespace {

// Distinct positive moduli in decreasing order with the measure carried by each.
std::vector<std::pair<double, double>> plateaus_descending(const SampledFunction& f) {
  std::vector<std::pair<double, double>> cells;
  const auto& grid = *f.grid();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.abs(i) > 0.0) cells.emplace_back(f.abs(i), grid.measure(i));
  }
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<double, double>> out;
  for (const auto& [value, mass] : cells) {
    if (!out.empty() && out.back().first == value) {
      out.back().second += mass;
    } else {
      out.emplace_back(value, mass);
    }
  }
  return out;
}

std::size_t plateau_index(const std::vector<double>& breakpoints, double t) {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - breakpoints.begin() - 1));
}

}  // namespace

double StepFunction::operator()(double t) const {
  if (t < 0.0) throw std::domain_error("StepFunction: negative argument");
  return values[plateau_index(breakpoints, t)];
}

double StepFunction::left_limit(double t) const {
  if (!(t > 0.0)) throw std::domain_error("StepFunction::left_limit needs t > 0");
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
  return values[static_cast<std::size_t>(it - breakpoints.begin() - 1)];
}

double StepFunction::integral(double a, double b) const {
  if (b < a) return -integral(b, a);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double lo = std::max(a, breakpoints[i]);
    const double hi = i + 1 < breakpoints.size() ? std::min(b, breakpoints[i + 1]) : b;
    if (hi <= lo || values[i] == 0.0) continue;
    sum += values[i] * (hi - lo);
  }
  return sum;
}

StepFunction distribution(const SampledFunction& f) {
  const auto plateaus = plateaus_descending(f);
  const std::size_t r = plateaus.size();
  StepFunction mu;
  mu.breakpoints.assign(r + 1, 0.0);
  mu.values.assign(r + 1, 0.0);
  // Accumulate from the top so the values coincide bit for bit with the
  // breakpoints of f*.
  double above = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    above += plateaus[j].second;
    mu.breakpoints[r - j] = plateaus[j].first;
    mu.values[r - j - 1] = above;
  }
  return mu;
}

StepFunction distribution(const StepFunction& g) {
  if (g.values.empty() || g.values.back() != 0.0) {
    throw std::invalid_argument("distribution: step function must vanish at infinity");
  }
  for (std::size_t i = 0; i + 1 < g.values.size(); ++i) {
    if (g.values[i + 1] > g.values[i]) {
      throw std::invalid_argument("distribution: step function must be non-increasing");
    }
  }
  // For non-increasing g, mu_g(s) is the right end of the last plateau above s.
  std::vector<std::pair<double, double>> levels;  // (value, right end of plateau)
  for (std::size_t i = 0; i + 1 < g.values.size(); ++i) {
    if (g.values[i] <= 0.0 || g.breakpoints[i + 1] == g.breakpoints[i]) continue;
    if (!levels.empty() && levels.back().first == g.values[i]) {
      levels.back().second = g.breakpoints[i + 1];
    } else {
      levels.emplace_back(g.values[i], g.breakpoints[i + 1]);
    }
  }
  const std::size_t r = levels.size();
  StepFunction mu;
  mu.breakpoints.assign(r + 1, 0.0);
  mu.values.assign(r + 1, 0.0);
  for (std::size_t j = 0; j < r; ++j) {
    mu.breakpoints[r - j] = levels[j].first;
    mu.values[r - j - 1] = levels[j].second;
  }
  return mu;
}

StepFunction decreasing_rearrangement(const SampledFunction& f) {
  const auto plateaus = plateaus_descending(f);
  StepFunction star;
  star.breakpoints.push_back(0.0);
  double end = 0.0;
  for (const auto& [value, mass] : plateaus) {
    star.values.push_back(value);
    end += mass;
    star.breakpoints.push_back(end);
  }
  star.values.push_back(0.0);
  return star;
}

double classical_lorentz_norm(const SampledFunction& f, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw std::invalid_argument("classical_lorentz_norm: exponents must be positive");
  }
  const auto star = decreasing_rearrangement(f);
  const std::size_t r = star.values.size() - 1;
  if (r == 0) return 0.0;

  if (q == kInf) {
    if (p == kInf) return star.values.front();
    double sup = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
      sup = std::max(sup, std::pow(star.breakpoints[j + 1], 1.0 / p) * star.values[j]);
    }
    return sup;
  }
  if (p == kInf) return kInf;  // int_0 dt/t diverges

  // int_a^b t^{q/p} dt/t = (p/q)(b^{q/p} - a^{q/p})
  const double e = q / p;
  double sum = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    const double a = star.breakpoints[j];
    const double b = star.breakpoints[j + 1];
    sum += std::pow(star.values[j], q) * (p / q) * (std::pow(b, e) - std::pow(a, e));
  }
  return std::pow(sum, 1.0 / q);
}

double lorentz_normalization_factor(double p, double q) {
  if (q == kInf) return 1.0;
  return std::pow(p, 1.0 / q);
}

}  // namespace varnorm
