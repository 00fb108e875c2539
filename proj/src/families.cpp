#include "varnorm/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace varnorm {

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::index: empty range");
  return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* text = std::getenv("VARNORM_SEED");
  if (!text || !*text) return fallback;
  std::uint64_t seed = 0;
  const char* end = text + std::strlen(text);
  const auto [ptr, ec] = std::from_chars(text, end, seed);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string("VARNORM_SEED is not an unsigned integer: ") + text);
  }
  return seed;
}

GridPtr random_grid(Rng& rng, std::size_t cells, double min_measure, double max_measure) {
  std::vector<double> m(cells);
  for (auto& v : m) v = rng.log_uniform(min_measure, max_measure);
  return MeasureGrid::from_measures(std::move(m));
}

GridPtr random_interval_grid(Rng& rng, std::size_t cells, double length) {
  std::vector<double> w(cells);
  double total = 0.0;
  for (auto& v : w) total += (v = rng.uniform(0.2, 1.0));
  std::vector<double> x{0.0};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cells; ++i) {
    acc += w[i];
    x.push_back(length * acc / total);
  }
  x.push_back(length);
  return MeasureGrid::from_breakpoints(std::move(x));
}

ExponentField random_exponent(Rng& rng, const GridPtr& grid, double lo, double hi,
                              double constant_probability) {
  if (rng.coin(constant_probability)) return ExponentField::constant(grid, rng.uniform(lo, hi));
  std::vector<double> v(grid->size());
  for (auto& x : v) x = rng.uniform(lo, hi);
  return ExponentField(grid, std::move(v));
}

SampledFunction random_function(Rng& rng, const GridPtr& grid, double decades,
                                double zero_probability, double repeat_probability) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (rng.coin(zero_probability)) {
      v[i] = 0.0;
    } else if (i > 0 && v[i - 1] != 0.0 && rng.coin(repeat_probability)) {
      v[i] = v[i - 1];
    } else {
      v[i] = std::pow(10.0, rng.uniform(-0.5 * decades, 0.5 * decades)) * (rng.coin() ? 1.0 : -1.0);
    }
  }
  // Keep the function nonzero.
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[rng.index(v.size())] = 1.0;
  return SampledFunction(grid, std::move(v));
}

std::vector<std::uint8_t> random_set(Rng& rng, const GridPtr& grid, double max_measure) {
  std::vector<std::uint8_t> mask(grid->size(), 0);
  const double target = rng.uniform(0.05, 1.0) * max_measure;
  double used = 0.0;
  const std::size_t start = rng.index(grid->size());
  for (std::size_t k = 0; k < grid->size(); ++k) {
    const std::size_t i = (start + k) % grid->size();
    if (!rng.coin(0.6)) continue;
    if (used + grid->measure(i) > target) continue;
    used += grid->measure(i);
    mask[i] = 1;
  }
  if (used == 0.0) {
    // Fall back to the smallest cell, which always fits when max_measure allows one.
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < grid->size(); ++i) {
      if (grid->measure(i) < grid->measure(smallest)) smallest = i;
    }
    if (grid->measure(smallest) > max_measure) {
      throw std::invalid_argument("random_set: no cell fits the measure bound");
    }
    mask[smallest] = 1;
  }
  return mask;
}

}  // namespace varnorm
