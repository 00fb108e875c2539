#include "doctest.h"
#include "varnorm/families.hpp"
#include "varnorm/lebesgue.hpp"
#include "varnorm/mixed_sequence.hpp"

#include <algorithm>
#include <cmath>

using namespace varnorm;

namespace {

FunctionSequence random_sequence(Rng& rng, const GridPtr& g, int n) {
  std::vector<SampledFunction> terms;
  for (int i = 0; i < n; ++i) terms.push_back(random_function(rng, g));
  return FunctionSequence(g, -static_cast<int>(rng.index(5)), std::move(terms));
}

}  // namespace

TEST_CASE("single constant term with p = q = 1") {
  const auto g = MeasureGrid::from_measures({2.0});
  const FunctionSequence seq(g, 0, {SampledFunction(g, std::vector<double>{1.0})});
  const auto one = ExponentField::constant(g, 1.0);
  const auto r = mixed_modular(seq, one, one);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].second == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(easy_modular(seq, one, one) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("empty and zero sequences") {
  const auto g = MeasureGrid::from_measures({1.0, 1.0});
  const auto p = ExponentField(g, {1.0, 3.0});
  const FunctionSequence empty(g, 0, {});
  CHECK(mixed_modular(empty, p, p).value == 0.0);
  CHECK(easy_modular(empty, p, p) == 0.0);
  CHECK(mixed_quasinorm(empty, p, p) == 0.0);
  const FunctionSequence zeros(g, 0, {SampledFunction::zero(g), SampledFunction::zero(g)});
  CHECK(mixed_quasinorm(zeros, p, p) == 0.0);
}

TEST_CASE("constant q: mixed and easy modulars agree") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto g = random_grid(rng, 12);
    const auto p = random_exponent(rng, g, 0.5, 8.0);
    const auto q = ExponentField::constant(g, rng.uniform(0.5, 8.0));
    const auto seq = random_sequence(rng, g, 4).scaled(0.05);
    CHECK(mixed_modular(seq, p, q).value == doctest::Approx(easy_modular(seq, p, q)).epsilon(1e-10));
  }
}

TEST_CASE("q below p: mixed and easy modulars agree") {
  Rng rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    const auto g = random_grid(rng, 10);
    const auto p = random_exponent(rng, g, 1.0, 8.0);
    std::vector<double> qv(g->size());
    for (std::size_t c = 0; c < qv.size(); ++c) qv[c] = p[c] * rng.uniform(0.2, 1.0);
    const ExponentField q(g, qv);
    const auto seq = random_sequence(rng, g, 3).scaled(0.05);
    CHECK(mixed_modular(seq, p, q).value == doctest::Approx(easy_modular(seq, p, q)).epsilon(1e-9));
  }
}

TEST_CASE("single constant function with p = q equals its modular") {
  Rng rng(33);
  const auto g = random_grid(rng, 9);
  const auto p = random_exponent(rng, g, 0.5, 6.0, 0.0);
  const auto f = random_function(rng, g).scaled(0.1);
  const FunctionSequence seq(g, 0, {f});
  CHECK(easy_modular(seq, p, p) == doctest::Approx(modular(f, p)).epsilon(1e-10));
  CHECK(mixed_modular(seq, p, p).value == doctest::Approx(modular(f, p)).epsilon(1e-10));
}

TEST_CASE("easy modular rejects its precondition") {
  const auto g = MeasureGrid::from_measures({1.0});
  const FunctionSequence seq(g, 0, {SampledFunction(g, std::vector<double>{1.0})});
  CHECK_THROWS(easy_modular(seq, ExponentField::constant(g, 2.0), ExponentField::constant(g, kInf)));
}

TEST_CASE("infinite q with an infeasible inner constraint gives an infinite term") {
  const auto g = MeasureGrid::from_measures({1.0});
  const FunctionSequence seq(g, 0, {SampledFunction(g, std::vector<double>{2.0})});
  CHECK(mixed_modular(seq, ExponentField::constant(g, 1.0), ExponentField::constant(g, kInf)).value == kInf);
}

TEST_CASE("constant exponents give the iterated norm") {
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_grid(rng, 10);
    const double p0 = rng.uniform(0.5, 8.0);
    const double q0 = rng.uniform(0.5, 8.0);
    const auto p = ExponentField::constant(g, p0);
    const auto q = ExponentField::constant(g, q0);
    const auto seq = random_sequence(rng, g, 5);
    double sum = 0.0;
    for (const auto& f : seq.terms()) sum += std::pow(luxemburg_norm(f, p), q0);
    CHECK(mixed_quasinorm(seq, p, q) == doctest::Approx(std::pow(sum, 1.0 / q0)).epsilon(1e-9));
  }
}

TEST_CASE("single element with infinite q is the Luxemburg norm") {
  Rng rng(35);
  const auto g = random_grid(rng, 15);
  const auto p = random_exponent(rng, g, 0.5, 8.0, 0.0);
  const auto f = random_function(rng, g);
  const FunctionSequence seq(g, 3, {f});
  CHECK(mixed_quasinorm(seq, p, ExponentField::constant(g, kInf)) ==
        doctest::Approx(luxemburg_norm(f, p)).epsilon(1e-10));
}

TEST_CASE("outer homogeneity and monotone trace") {
  Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_grid(rng, 10);
    const auto p = random_exponent(rng, g, 0.5, 8.0);
    const auto q = random_exponent(rng, g, 0.5, 8.0);
    const auto seq = random_sequence(rng, g, 4);
    QuasinormTrace trace;
    const double n = mixed_quasinorm(seq, p, q, &trace);
    CHECK(mixed_quasinorm(seq.scaled(-2.5), p, q) == doctest::Approx(2.5 * n).epsilon(1e-10));
    // Larger mu never gives a larger modular.
    auto steps = trace.steps;
    std::sort(steps.begin(), steps.end());
    for (std::size_t i = 1; i < steps.size(); ++i) CHECK(steps[i].second <= steps[i - 1].second);
  }
}

TEST_CASE("level sequence of f = 3 with p = q = 1 has modular 4") {
  const auto g = MeasureGrid::from_measures({1.0});
  const auto seq = level_sequence_terms(build_level_sequence(SampledFunction(g, std::vector<double>{3.0})));
  const auto one = ExponentField::constant(g, 1.0);
  const auto r = mixed_modular(seq, one, one);
  CHECK(r.value == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_FALSE(r.tail_truncated);
  CHECK(easy_modular(seq, one, one) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("q = p: easy modular of the level sequence matches the geometric closed form") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_grid(rng, 16);
    const auto p = random_exponent(rng, g, 0.5, 8.0);
    const auto f = random_function(rng, g, 4.0);
    double expected = 0.0;
    for (std::size_t c = 0; c < g->size(); ++c) {
      if (f.abs(c) == 0.0) continue;
      const int kx = ceil_log2(f.abs(c)) - 1;  // 2^kx < |f| <= 2^{kx+1}
      expected += g->measure(c) * std::pow(2.0, kx * p[c]) / (1.0 - std::pow(2.0, -p[c]));
    }
    const auto seq = level_sequence_terms(build_level_sequence(f));
    CHECK(easy_modular(seq, p, p) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(mixed_modular(seq, p, p).value == doctest::Approx(expected).epsilon(1e-9));
  }
}
