#ifndef VARNORM_FAMILIES_HPP
#define VARNORM_FAMILIES_HPP

#include <cstdint>
#include <random>

#include "varnorm/core_model.hpp"

namespace varnorm {

// mt19937_64 with uniforms built directly from the top 53 bits, so the
// streams do not depend on the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  std::size_t index(std::size_t n);
  bool coin(double probability = 0.5) { return uniform() < probability; }

 private:
  std::mt19937_64 engine_;
};

// VARNORM_SEED when set to an unsigned integer, otherwise fallback.
std::uint64_t seed_from_env(std::uint64_t fallback);

// Abstract grid with log-uniform measures in [min_measure, max_measure].
GridPtr random_grid(Rng& rng, std::size_t cells, double min_measure = 0.05,
                    double max_measure = 1.0);

// Partition of [0, length] into cells of random length, with interval geometry.
GridPtr random_interval_grid(Rng& rng, std::size_t cells, double length = 1.0);

// Exponent in [lo, hi]: a single constant with probability constant_probability,
// otherwise independent per cell.
ExponentField random_exponent(Rng& rng, const GridPtr& grid, double lo, double hi,
                              double constant_probability = 0.3);

// Step function with magnitudes log-uniform over `decades` decades, random
// signs, some zero cells and some repeated values.
SampledFunction random_function(Rng& rng, const GridPtr& grid, double decades = 3.0,
                                double zero_probability = 0.15, double repeat_probability = 0.2);

// 0/1 mask of a random nonempty set of cells whose total measure is at most max_measure.
std::vector<std::uint8_t> random_set(Rng& rng, const GridPtr& grid, double max_measure);

}  // namespace varnorm

#endif  // VARNORM_FAMILIES_HPP
