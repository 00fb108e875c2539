#ifndef VARNORM_OPERATORS_HPP
#define VARNORM_OPERATORS_HPP

#include <functional>
#include <vector>

#include "varnorm/core_model.hpp"
#include "varnorm/lorentz_variable.hpp"

namespace varnorm {

// (T_alpha f)(x) = x^{-alpha-1} int_0^x f, evaluated at cell midpoints with
// exact prefix integrals of the piecewise constant f. The grid must carry
// geometry inside [0, 1].
SampledFunction hardy_op(const SampledFunction& f, double alpha);

// Discrete maximal function: for each cell the largest average of |f| over a
// run of consecutive cells containing it. O(N^2).
SampledFunction maximal_op_1d(const SampledFunction& f);

// sup_lambda lambda ||chi_{|Tf| > lambda}||_{pi_out} / ||f||_{pi_in}.
double weak_type_ratio(const SampledFunction& tf, const SampledFunction& f,
                       const ExponentField& pi_in, const ExponentField& pi_out);

// [0, 2] made of a base grid on [0, 1] and its translate by 1. The whole grid
// is abstract (base measures twice): translates of cells near 0 would not be
// representable next to 1 in double precision.
class GluedDomain {
 public:
  explicit GluedDomain(GridPtr base);
  // Splits a 1-D grid on [0, 2] whose cells on [1, 2] mirror those on [0, 1].
  static GluedDomain split(const GridPtr& whole);

  const GridPtr& base() const { return base_; }
  const GridPtr& whole() const { return whole_; }

  SampledFunction left(const SampledFunction& f) const;   // f on [0, 1) as a base function
  SampledFunction right(const SampledFunction& f) const;  // f(. + 1) on [1, 2]
  SampledFunction glue(const SampledFunction& left, const SampledFunction& right) const;
  ExponentField glue(double on_left, double on_right) const;

 private:
  GluedDomain(GridPtr base, GridPtr whole);

  GridPtr base_;
  GridPtr whole_;
};

struct GluedExponentPair {
  double p0, q0, p1, q1, theta;
  ExponentField pi0, pi1, pi_theta;

  GluedExponentPair(const GluedDomain& domain, double p0, double q0, double p1, double q1,
                    double theta);
};

using BaseOperator = std::function<SampledFunction(const SampledFunction&)>;

// (T~ f)(x) = T(chi_[0,1] f)(x - 1) on [1, 2], 0 on [0, 1).
SampledFunction glued_operator(const GluedDomain& domain, const SampledFunction& f,
                               const BaseOperator& base);

// Breakpoints 0, delta, geometric cells up to 1/2 (at least cells_per_decade
// per decade), then uniform_cells equal cells on [1/2, 1].
GridPtr counterexample_grid(double delta, int cells_per_decade = 40, int uniform_cells = 64);

// t^{-1/4} |ln t|^{-1/4-eps} on [delta, 1/2] sampled at cell midpoints, 0 elsewhere.
SampledFunction counterexample_function(const GridPtr& grid, double epsilon, double delta);

struct SweepRow {
  double delta;
  std::size_t cells;
  double norm_f_L4;
  double norm_Tf_L43;
  double weak_ratio_pi0;
  double weak_ratio_pi1;
};

// delta_list entries must lie in (0, 1/4).
std::vector<SweepRow> counterexample_sweep(double epsilon, const std::vector<double>& delta_list,
                                           int cells_per_decade = 40);

// 2^-8, 2^-16, ... by successive squaring, down to delta_min.
std::vector<double> squaring_deltas(double delta_min, double first = 0x1p-8);

struct MarcinkiewiczResult {
  double p;
  double q;
  bool condition_holds;  // p <= q
};

MarcinkiewiczResult marcinkiewicz_predicate(double p0, double p1, double q0, double q1, double theta);

struct Question28Row {
  double delta;
  std::size_t cells;
  double weak_ratio_pi0;
  double weak_ratio_pi1;
  double strong_ratio;  // ||T~ f||_{pi_theta} / ||f||_{pi_theta}
};

struct Question28Result {
  VerificationReport weak;    // weak ratios <= weak_bound
  VerificationReport strong;  // strong ratios strictly increasing along the sweep
  std::vector<Question28Row> rows;
  double pi_theta_left = 0.0;
  double pi_theta_right = 0.0;
};

Question28Result question28_experiment(double theta, double epsilon,
                                       const std::vector<double>& delta_list,
                                       int cells_per_decade = 40, double weak_bound = 1.1);

}  // namespace varnorm

#endif  // VARNORM_OPERATORS_HPP
