#include "doctest.h"
#include "varnorm/families.hpp"
#include "varnorm/lebesgue.hpp"

#include <cmath>

using namespace varnorm;

TEST_CASE("phi") {
  CHECK(phi(2.0, 3.0) == 9.0);
  CHECK(phi(kInf, 0.5) == 0.0);
  CHECK(phi(kInf, 1.0) == 0.0);
  CHECK(phi(kInf, 2.0) == kInf);
}

TEST_CASE("modular examples") {
  const auto g2 = MeasureGrid::from_measures({0.5, 1.5});
  CHECK(modular(SampledFunction(g2, std::vector<double>{1.0, 1.0}), ExponentField::constant(g2, 3.0)) ==
        doctest::Approx(2.0));
  const auto g1 = MeasureGrid::from_measures({1.0});
  CHECK(modular(SampledFunction(g1, std::vector<double>{1.5}), ExponentField::constant(g1, kInf)) == kInf);
  const auto g = MeasureGrid::from_measures({1.0, 1.0});
  CHECK(modular(SampledFunction(g, std::vector<double>{2.0, 3.0}), ExponentField(g, {1.0, 2.0})) ==
        doctest::Approx(11.0));
}

TEST_CASE("Luxemburg norm examples") {
  const auto g = MeasureGrid::from_measures({0.25, 0.75});
  const SampledFunction chi(g, std::vector<double>{1.0, 0.0});
  CHECK(luxemburg_norm(chi, ExponentField::constant(g, 2.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(luxemburg_norm(SampledFunction(g, std::vector<double>{-4.0, 2.5}), ExponentField::constant(g, kInf)) ==
        4.0);

  const auto g2 = MeasureGrid::from_measures({1.0, 1.0});
  const double golden = luxemburg_norm(SampledFunction(g2, std::vector<double>{1.0, 1.0}), ExponentField(g2, {1.0, 2.0}));
  CHECK(golden == doctest::Approx(0.5 * (1.0 + std::sqrt(5.0))).epsilon(1e-12));
  CHECK(luxemburg_norm(SampledFunction::zero(g2), ExponentField(g2, {1.0, 2.0})) == 0.0);
}

TEST_CASE("golden ratio agrees with a dense lambda scan") {
  double best = 0.0;
  for (int i = 0; i <= 2000000; ++i) {
    const double lambda = 1.0 + i * 1e-6;
    if (1.0 / lambda + 1.0 / (lambda * lambda) <= 1.0) {
      best = lambda;
      break;
    }
  }
  const auto g = MeasureGrid::from_measures({1.0, 1.0});
  const double norm = luxemburg_norm(SampledFunction(g, std::vector<double>{1.0, 1.0}), ExponentField(g, {1.0, 2.0}));
  CHECK(std::abs(norm - best) <= 1e-6);
}

TEST_CASE("mixed finite and infinite exponents respect the cap") {
  const auto g = MeasureGrid::from_measures({1.0, 1.0});
  // Finite part alone has norm 0.1; the infinite cell forces lambda >= 3.
  const SampledFunction f(g, std::vector<double>{0.1, 3.0});
  CHECK(luxemburg_norm(f, ExponentField(g, {1.0, kInf})) == doctest::Approx(3.0));
}

TEST_CASE("constant exponent matches the closed-form Lp norm") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_grid(rng, 16);
    const auto f = random_function(rng, g);
    const double p = rng.uniform(0.5, 8.0);
    double sum = 0.0;
    for (std::size_t c = 0; c < g->size(); ++c) sum += g->measure(c) * std::pow(f.abs(c), p);
    CHECK(luxemburg_norm(f, ExponentField::constant(g, p)) == doctest::Approx(std::pow(sum, 1.0 / p)).epsilon(1e-10));
  }
}

TEST_CASE("norm is the threshold of the unit modular ball") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_grid(rng, 20);
    const auto f = random_function(rng, g);
    const auto p = random_exponent(rng, g, 0.5, 8.0);
    const double n = luxemburg_norm(f, p);
    CHECK(modular(f, p, n) <= 1.0);
    CHECK(modular(f, p, n * (1.0 - 1e-9)) > 1.0);
    // Homogeneity.
    CHECK(luxemburg_norm(f.scaled(-3.7), p) == doctest::Approx(3.7 * n).epsilon(1e-11));
  }
}

TEST_CASE("indicator norm equals the norm of the indicator function") {
  const auto g = MeasureGrid::from_measures({0.3, 0.2, 0.5});
  const ExponentField p(g, {1.0, 3.0, 0.5});
  const std::vector<std::uint8_t> mask{1, 0, 1};
  const SampledFunction chi(g, std::vector<double>{1.0, 0.0, 1.0});
  CHECK(indicator_norm(mask, p) == doctest::Approx(luxemburg_norm(chi, p)).epsilon(1e-14));
}
