#include "doctest.h"
#include "varnorm/families.hpp"
#include "varnorm/lebesgue.hpp"
#include "varnorm/operators.hpp"

#include <cmath>

using namespace varnorm;

namespace {

GridPtr uniform_grid(std::size_t n, double a = 0.0, double b = 1.0) {
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  return MeasureGrid::from_breakpoints(std::move(x));
}

SampledFunction sample(const GridPtr& g, double (*f)(double)) {
  std::vector<double> v(g->size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = f(g->midpoint(c));
  return SampledFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("Hardy operator of the constant one") {
  const auto g = counterexample_grid(0x1p-8);
  const auto tf = hardy_op(SampledFunction(g, std::vector<double>(g->size(), 1.0)), 0.5);
  for (std::size_t c = 0; c < g->size(); ++c) {
    CHECK(tf.abs(c) == doctest::Approx(std::pow(g->midpoint(c), -0.5)).epsilon(1e-12));
  }
  CHECK(hardy_op(SampledFunction::zero(g), 0.5).is_zero());
}

TEST_CASE("Hardy operator of the identity converges to x^{1/2}/2") {
  double previous = kInf;
  for (std::size_t n : {16u, 64u, 256u, 1024u}) {
    const auto g = uniform_grid(n);
    const auto tf = hardy_op(sample(g, [](double t) { return t; }), 0.5);
    double err = 0.0;
    // The first cell carries an O(1) midpoint error at every n; measure away from 0.
    for (std::size_t c = n / 4; c < n; ++c) {
      const double x = g->midpoint(c);
      err = std::max(err, std::abs(tf.abs(c) - 0.5 * std::sqrt(x)) / (0.5 * std::sqrt(x)));
    }
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("Hardy operator is linear") {
  Rng rng(51);
  const auto g = random_interval_grid(rng, 40);
  const auto f = random_function(rng, g);
  const auto h = random_function(rng, g);
  const auto lhs = hardy_op(f.scaled(2.0) + h, 0.5);
  const auto rhs = hardy_op(f, 0.5).scaled(2.0) + hardy_op(h, 0.5);
  for (std::size_t c = 0; c < g->size(); ++c) {
    CHECK(std::abs(lhs.value(c) - rhs.value(c)) <= 1e-12 * (1.0 + std::abs(rhs.value(c))));
  }
}

TEST_CASE("maximal operator") {
  const auto g = uniform_grid(10);
  const auto m = maximal_op_1d(SampledFunction(g, std::vector<double>(10, 2.5)));
  for (std::size_t c = 0; c < 10; ++c) CHECK(m.abs(c) == doctest::Approx(2.5));

  std::vector<double> spike(10, 0.0);
  spike[4] = 1.0;
  const auto ms = maximal_op_1d(SampledFunction(g, spike));
  for (std::size_t c : {1u, 4u, 9u}) {
    const double cells = static_cast<double>(c > 4 ? c - 4 : 4 - c) + 1.0;
    CHECK(ms.abs(c) == doctest::Approx(1.0 / cells));
  }

  Rng rng(52);
  const auto rg = random_interval_grid(rng, 30);
  const auto f = random_function(rng, rg);
  std::vector<double> bigger(rg->size());
  for (std::size_t c = 0; c < bigger.size(); ++c) bigger[c] = f.abs(c) * rng.uniform(1.0, 2.0);
  const auto mf = maximal_op_1d(f);
  const auto mg = maximal_op_1d(SampledFunction(rg, bigger));
  for (std::size_t c = 0; c < bigger.size(); ++c) CHECK(mf.abs(c) <= mg.abs(c) * (1.0 + 1e-14));
}

TEST_CASE("weak-type ratio of the identity") {
  const auto g = MeasureGrid::from_measures({0.25, 0.5, 0.25});
  const SampledFunction chi(g, std::vector<double>{1.0, 0.0, 1.0});
  const auto p = ExponentField::constant(g, 3.0);
  CHECK(weak_type_ratio(chi, chi, p, p) == doctest::Approx(1.0).epsilon(1e-12));
  const auto pv = ExponentField(g, {1.0, 2.0, 4.0});
  CHECK(weak_type_ratio(chi, chi, pv, pv) <= 1.0 + 1e-12);
  CHECK_THROWS(weak_type_ratio(chi, SampledFunction::zero(g), p, p));
}

TEST_CASE("weak-type sup is attained on the breakpoint set") {
  Rng rng(53);
  const auto g = random_grid(rng, 6);
  const auto tf = random_function(rng, g);
  const auto f = random_function(rng, g);
  const auto p = random_exponent(rng, g, 0.5, 4.0);
  const double n = luxemburg_norm(f, p);
  double dense = 0.0;
  for (int i = 1; i <= 200000; ++i) {
    const double lambda = tf.sup_abs() * i / 200000.0;
    dense = std::max(dense, lambda * indicator_norm(level_set(tf, lambda), p) / n);
  }
  const double exact = weak_type_ratio(tf, f, p, p);
  CHECK(dense <= exact * (1.0 + 1e-12));
  CHECK(dense >= exact * (1.0 - 1e-4));
}

TEST_CASE("Hardy operator weak-type estimates on random inputs") {
  Rng rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = counterexample_grid(0x1p-8, 40, 64);
    std::vector<double> v(g->size());
    for (auto& x : v) x = rng.log_uniform(0.01, 10.0);
    // Like f_eps, vanish on [0, delta]; a whole-cell level set there costs up to sqrt 2.
    v[0] = 0.0;
    const SampledFunction f(g, v);
    const auto tf = hardy_op(f, 0.5);
    CHECK(weak_type_ratio(tf, f, ExponentField::constant(g, 2.0), ExponentField::constant(g, 1.0)) <= 1.1);
    CHECK(weak_type_ratio(tf, f, ExponentField::constant(g, kInf), ExponentField::constant(g, 2.0)) <= 1.1);
  }
}

TEST_CASE("glued operator") {
  const auto base = counterexample_grid(0x1p-8);
  const GluedDomain d(base);
  const BaseOperator hardy = [](const SampledFunction& x) { return hardy_op(x, 0.5); };
  const auto ones = SampledFunction(base, std::vector<double>(base->size(), 1.0));
  const auto zero = SampledFunction::zero(base);

  CHECK(glued_operator(d, d.glue(zero, ones), hardy).is_zero());

  const auto t = glued_operator(d, d.glue(ones, zero), hardy);
  CHECK(d.left(t).is_zero());
  const auto right = d.right(t);
  for (std::size_t c = 0; c < base->size(); ++c) {
    CHECK(right.abs(c) == doctest::Approx(std::pow(base->midpoint(c), -0.5)).epsilon(1e-12));
  }

  Rng rng(55);
  const auto f = d.glue(random_function(rng, base), random_function(rng, base));
  const auto h = d.glue(random_function(rng, base), random_function(rng, base));
  const auto lhs = glued_operator(d, f + h.scaled(-0.5), hardy);
  const auto rhs = glued_operator(d, f, hardy) + glued_operator(d, h, hardy).scaled(-0.5);
  for (std::size_t c = 0; c < lhs.size(); ++c) {
    CHECK(std::abs(lhs.value(c) - rhs.value(c)) <= 1e-12 * (1.0 + std::abs(rhs.value(c))));
  }
}

TEST_CASE("glued exponents") {
  const GluedDomain d(uniform_grid(4));
  const GluedExponentPair pair(d, 2.0, 1.0, kInf, 2.0, 0.5);
  CHECK(pair.pi0[0] == 2.0);
  CHECK(pair.pi0[7] == 1.0);
  CHECK(pair.pi1[0] == kInf);
  CHECK(pair.pi1[7] == 2.0);
  CHECK(pair.pi_theta[0] == doctest::Approx(4.0));
  CHECK(pair.pi_theta[7] == doctest::Approx(4.0 / 3.0));
  CHECK(d.whole()->total_measure() == doctest::Approx(2.0));
}

TEST_CASE("Marcinkiewicz predicate") {
  const auto a = marcinkiewicz_predicate(2.0, kInf, 1.0, 2.0, 0.5);
  CHECK(a.p == doctest::Approx(4.0));
  CHECK(a.q == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(a.condition_holds);
  const auto b = marcinkiewicz_predicate(1.0, kInf, 1.0, kInf, 0.5);
  CHECK(b.p == doctest::Approx(2.0));
  CHECK(b.q == doctest::Approx(2.0));
  CHECK(b.condition_holds);
  const auto c = marcinkiewicz_predicate(2.0, 4.0, 2.0, 4.0, 0.3);
  CHECK(c.p == doctest::Approx(c.q));
  CHECK(c.condition_holds);
  CHECK_THROWS(marcinkiewicz_predicate(2.0, 2.0, 1.0, 2.0, 0.5));
}

TEST_CASE("counterexample grid resolves the singularity") {
  const double delta = 0x1p-16;
  const auto g = counterexample_grid(delta, 40);
  CHECK(g->left(0) == 0.0);
  CHECK(g->right(0) == delta);
  CHECK(g->breakpoints().back() == 1.0);
  const double decades = std::log10(0.5 / delta);
  std::size_t geometric = 0;
  for (std::size_t c = 0; c < g->size(); ++c) {
    if (g->left(c) >= delta && g->right(c) <= 0.5) ++geometric;
  }
  CHECK(static_cast<double>(geometric) >= 40.0 * decades);
}

TEST_CASE("counterexample sweep matches continuum quadrature") {
  // Frozen from adaptive quadrature of the exact integrals of f_eps and T f_eps
  // with f_eps truncated to [delta, 1/2].
  struct Oracle {
    double eps, delta, norm_f, norm_tf;
  };
  const Oracle oracle[] = {
      {0.25, 0x1p-8, 1.0599750626, 2.1811010159},  {0.25, 0x1p-16, 1.0784163257, 3.2921979111},
      {0.25, 0x1p-32, 1.0872929288, 4.5235992598}, {0.25, 0x1p-64, 1.0916509036, 5.9225148824},
      {0.6, 0x1p-8, 0.9993346870, 1.6097702261},   {0.6, 0x1p-16, 1.0007184728, 2.1022426611},
      {0.6, 0x1p-32, 1.0009800053, 2.5113428181},  {0.6, 0x1p-64, 1.0010295333, 2.8617123818},
  };
  for (const auto& o : oracle) {
    const auto rows = counterexample_sweep(o.eps, {o.delta});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].norm_f_L4 == doctest::Approx(o.norm_f).epsilon(1e-3));
    CHECK(rows[0].norm_Tf_L43 == doctest::Approx(o.norm_tf).epsilon(1e-3));
    CHECK(rows[0].weak_ratio_pi0 <= 1.1);
    CHECK(rows[0].weak_ratio_pi1 <= 1.1);
  }
}

TEST_CASE("counterexample strong norm grows while the input norm converges") {
  const auto rows = counterexample_sweep(0.25, squaring_deltas(0x1p-64));
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].norm_Tf_L43 > rows[i - 1].norm_Tf_L43);
    if (i >= 2) {
      CHECK(rows[i].norm_f_L4 - rows[i - 1].norm_f_L4 < rows[i - 1].norm_f_L4 - rows[i - 2].norm_f_L4);
    }
  }
  CHECK_THROWS(counterexample_sweep(0.25, {0.3}));
}

TEST_CASE("squaring deltas") {
  const auto d = squaring_deltas(0x1p-64);
  REQUIRE(d.size() == 4);
  CHECK(d[0] == 0x1p-8);
  CHECK(d[1] == 0x1p-16);
  CHECK(d[3] == 0x1p-64);
}

TEST_CASE("question 2.8 experiment") {
  const auto r = question28_experiment(0.5, 0.25, squaring_deltas(0x1p-32));
  CHECK(r.pi_theta_left == doctest::Approx(4.0));
  CHECK(r.pi_theta_right == doctest::Approx(4.0 / 3.0));
  CHECK(r.weak.pass);
  CHECK(r.strong.pass);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].strong_ratio > r.rows[i - 1].strong_ratio);
}
