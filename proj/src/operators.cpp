#include "varnorm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "varnorm/lebesgue.hpp"

namespace varnorm {

namespace {

// Neumaier compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

void require_geometry(const SampledFunction& f, const char* context) {
  if (!f.grid()->has_geometry()) {
    throw std::invalid_argument(std::string(context) + ": grid has no interval geometry");
  }
}

}  // namespace

SampledFunction hardy_op(const SampledFunction& f, double alpha) {
  require_geometry(f, "hardy_op");
  if (!(alpha > 0.0)) throw std::invalid_argument("hardy_op: alpha must be positive");
  const auto& grid = *f.grid();
  if (grid.left(0) < 0.0 || grid.right(grid.size() - 1) > 1.0) {
    throw std::invalid_argument("hardy_op: grid must lie inside [0, 1]");
  }
  std::vector<std::complex<double>> out(f.size());
  CompensatedSum re, im;
  // int_0^{x_0} f is taken as 0: the grid starts where f starts.
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double mid = grid.midpoint(i);
    const double partial = mid - grid.left(i);
    const auto v = f.value(i);
    const std::complex<double> integral(re.value() + v.real() * partial,
                                        im.value() + v.imag() * partial);
    out[i] = integral * std::pow(mid, -alpha - 1.0);
    re.add(v.real() * grid.measure(i));
    im.add(v.imag() * grid.measure(i));
  }
  return SampledFunction(f.grid(), std::move(out));
}

SampledFunction maximal_op_1d(const SampledFunction& f) {
  require_geometry(f, "maximal_op_1d");
  const auto& grid = *f.grid();
  const std::size_t n = f.size();
  std::vector<double> best(n, 0.0);
  std::vector<double> averages(n);
  for (std::size_t a = 0; a < n; ++a) {
    CompensatedSum mass;
    for (std::size_t b = a; b < n; ++b) {
      mass.add(f.abs(b) * grid.measure(b));
      averages[b] = mass.value() / (grid.right(b) - grid.left(a));
    }
    // Cell c in [a, b] sees max_{b >= c} average(a, b).
    double suffix = 0.0;
    for (std::size_t c = n; c-- > a;) {
      suffix = std::max(suffix, averages[c]);
      best[c] = std::max(best[c], suffix);
    }
  }
  return SampledFunction(f.grid(), std::move(best));
}

double weak_type_ratio(const SampledFunction& tf, const SampledFunction& f,
                       const ExponentField& pi_in, const ExponentField& pi_out) {
  const double den = luxemburg_norm(f, pi_in);
  if (den == 0.0) throw std::invalid_argument("weak_type_ratio: input has zero norm");
  return lorentz_norm_qconst(tf, pi_out, kInf) / den;
}

GluedDomain::GluedDomain(GridPtr base) : base_(std::move(base)) {
  if (!base_->has_geometry() || base_->left(0) != 0.0 || base_->right(base_->size() - 1) != 1.0) {
    throw std::invalid_argument("GluedDomain: base grid must partition [0, 1]");
  }
  std::vector<double> measures(base_->measures().begin(), base_->measures().end());
  measures.insert(measures.end(), base_->measures().begin(), base_->measures().end());
  whole_ = MeasureGrid::from_measures(std::move(measures));
}

GluedDomain::GluedDomain(GridPtr base, GridPtr whole)
    : base_(std::move(base)), whole_(std::move(whole)) {}

GluedDomain GluedDomain::split(const GridPtr& whole) {
  const auto x = whole->breakpoints();
  const std::size_t n = whole->size();
  if (x.empty() || n % 2 != 0 || x.front() != 0.0 || x.back() != 2.0 || x[n / 2] != 1.0) {
    throw std::invalid_argument("GluedDomain::split: grid does not split at x = 1 over [0, 2]");
  }
  for (std::size_t i = 0; i <= n / 2; ++i) {
    if (std::abs(x[n / 2 + i] - 1.0 - x[i]) > 4.0 * std::numeric_limits<double>::epsilon()) {
      throw std::invalid_argument("GluedDomain::split: cells on [1, 2] do not mirror [0, 1]");
    }
  }
  auto base = MeasureGrid::from_breakpoints(std::vector<double>(x.begin(), x.begin() + n / 2 + 1));
  return GluedDomain(std::move(base), whole);
}

SampledFunction GluedDomain::left(const SampledFunction& f) const {
  require_same_grid(f.grid(), whole_, "GluedDomain::left");
  const auto v = f.values();
  return SampledFunction(base_, std::vector<std::complex<double>>(v.begin(), v.begin() + base_->size()));
}

SampledFunction GluedDomain::right(const SampledFunction& f) const {
  require_same_grid(f.grid(), whole_, "GluedDomain::right");
  const auto v = f.values();
  return SampledFunction(base_, std::vector<std::complex<double>>(v.begin() + base_->size(), v.end()));
}

SampledFunction GluedDomain::glue(const SampledFunction& left, const SampledFunction& right) const {
  require_same_grid(left.grid(), base_, "GluedDomain::glue");
  require_same_grid(right.grid(), base_, "GluedDomain::glue");
  std::vector<std::complex<double>> v(left.values().begin(), left.values().end());
  v.insert(v.end(), right.values().begin(), right.values().end());
  return SampledFunction(whole_, std::move(v));
}

ExponentField GluedDomain::glue(double on_left, double on_right) const {
  std::vector<double> v(base_->size(), on_left);
  v.resize(2 * base_->size(), on_right);
  return ExponentField(whole_, std::move(v));
}

namespace {

double interpolate_exponent(double a, double b, double theta) {
  const double inv = (1.0 - theta) / a + theta / b;  // 1/inf = 0
  return inv == 0.0 ? kInf : 1.0 / inv;
}

}  // namespace

GluedExponentPair::GluedExponentPair(const GluedDomain& domain, double p0, double q0, double p1,
                                     double q1, double theta)
    : p0(p0), q0(q0), p1(p1), q1(q1), theta(theta),
      pi0(domain.glue(p0, q0)),
      pi1(domain.glue(p1, q1)),
      pi_theta(domain.glue(interpolate_exponent(p0, p1, theta), interpolate_exponent(q0, q1, theta))) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("GluedExponentPair: theta in (0, 1)");
}

SampledFunction glued_operator(const GluedDomain& domain, const SampledFunction& f,
                               const BaseOperator& base) {
  const auto image = base(domain.left(f));
  require_same_grid(image.grid(), domain.base(), "glued_operator");
  return domain.glue(SampledFunction::zero(domain.base()), image);
}

GridPtr counterexample_grid(double delta, int cells_per_decade, int uniform_cells) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("counterexample_grid: delta in (0, 1/2)");
  if (cells_per_decade < 1 || uniform_cells < 1) {
    throw std::invalid_argument("counterexample_grid: cell counts must be positive");
  }
  const double span = std::log(0.5 / delta);
  const int n = static_cast<int>(std::ceil(span / std::log(10.0) * cells_per_decade));
  std::vector<double> x{0.0, delta};
  for (int i = 1; i < n; ++i) x.push_back(delta * std::exp(span * i / n));
  x.push_back(0.5);
  for (int i = 1; i < uniform_cells; ++i) x.push_back(0.5 + 0.5 * i / uniform_cells);
  x.push_back(1.0);
  return MeasureGrid::from_breakpoints(std::move(x));
}

SampledFunction counterexample_function(const GridPtr& grid, double epsilon, double delta) {
  std::vector<double> v(grid->size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (grid->left(i) < delta || grid->right(i) > 0.5) continue;
    const double t = grid->midpoint(i);
    v[i] = std::pow(t, -0.25) * std::pow(std::abs(std::log(t)), -0.25 - epsilon);
  }
  return SampledFunction(grid, std::move(v));
}

namespace {

struct SweepPoint {
  std::size_t cells;
  double norm_f_L4;
  double norm_Tf_L43;
  double weak0, weak1, strong;
};

SweepPoint evaluate_point(double epsilon, double delta, int cells_per_decade, double theta) {
  const auto grid = counterexample_grid(delta, cells_per_decade);
  const auto f = counterexample_function(grid, epsilon, delta);
  const auto tf = hardy_op(f, 0.5);

  const GluedDomain domain(grid);
  const GluedExponentPair pair(domain, 2.0, 1.0, kInf, 2.0, theta);
  const auto glued_f = domain.glue(f, SampledFunction::zero(grid));
  const auto glued_tf =
      glued_operator(domain, glued_f, [](const SampledFunction& g) { return hardy_op(g, 0.5); });

  SweepPoint out;
  out.cells = grid->size();
  out.norm_f_L4 = luxemburg_norm(f, ExponentField::constant(grid, 4.0));
  out.norm_Tf_L43 = luxemburg_norm(tf, ExponentField::constant(grid, 4.0 / 3.0));
  out.weak0 = weak_type_ratio(glued_tf, glued_f, pair.pi0, pair.pi0);
  out.weak1 = weak_type_ratio(glued_tf, glued_f, pair.pi1, pair.pi1);
  out.strong = luxemburg_norm(glued_tf, pair.pi_theta) / luxemburg_norm(glued_f, pair.pi_theta);
  return out;
}

}  // namespace

std::vector<SweepRow> counterexample_sweep(double epsilon, const std::vector<double>& delta_list,
                                           int cells_per_decade) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("counterexample_sweep: epsilon must be positive");
  std::vector<SweepRow> rows;
  for (double delta : delta_list) {
    if (!(delta > 0.0 && delta < 0.25)) {
      throw std::invalid_argument("counterexample_sweep: delta must lie in (0, 1/4)");
    }
    const auto pt = evaluate_point(epsilon, delta, cells_per_decade, 0.5);
    rows.push_back({delta, pt.cells, pt.norm_f_L4, pt.norm_Tf_L43, pt.weak0, pt.weak1});
  }
  return rows;
}

std::vector<double> squaring_deltas(double delta_min, double first) {
  if (!(delta_min > 0.0)) throw std::invalid_argument("squaring_deltas: delta_min must be positive");
  std::vector<double> out;
  for (double d = first; d >= delta_min && d > 0.0; d *= d) out.push_back(d);
  return out;
}

MarcinkiewiczResult marcinkiewicz_predicate(double p0, double p1, double q0, double q1, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("marcinkiewicz_predicate: theta in (0, 1)");
  for (double e : {p0, p1, q0, q1}) {
    if (!(e > 0.0)) throw std::invalid_argument("marcinkiewicz_predicate: exponents must be positive");
  }
  if (p0 == p1) throw std::invalid_argument("marcinkiewicz_predicate: p0 == p1");
  if (q0 == q1) throw std::invalid_argument("marcinkiewicz_predicate: q0 == q1");
  const double p = interpolate_exponent(p0, p1, theta);
  const double q = interpolate_exponent(q0, q1, theta);
  return {p, q, p <= q};
}

Question28Result question28_experiment(double theta, double epsilon,
                                       const std::vector<double>& delta_list, int cells_per_decade,
                                       double weak_bound) {
  Question28Result out;
  out.weak = VerificationReport("question28-weak", 0.0);
  out.strong = VerificationReport("question28-strong", 0.0);
  out.pi_theta_left = interpolate_exponent(2.0, kInf, theta);
  out.pi_theta_right = interpolate_exponent(1.0, 2.0, theta);
  for (double delta : delta_list) {
    const auto pt = evaluate_point(epsilon, delta, cells_per_decade, theta);
    out.rows.push_back({delta, pt.cells, pt.weak0, pt.weak1, pt.strong});
    out.weak.record(weak_bound - pt.weak0);
    out.weak.record(weak_bound - pt.weak1);
    out.weak.observe("weak_ratio_pi0", pt.weak0);
    out.weak.observe("weak_ratio_pi1", pt.weak1);
    out.strong.observe("strong_ratio", pt.strong);
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const double prev = out.rows[i - 1].strong_ratio;
    const double cur = out.rows[i].strong_ratio;
    out.strong.record(cur > prev ? relative_slack(prev, cur) : -1.0);
  }
  return out;
}

}  // namespace varnorm
