#include "varnorm/mixed_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "varnorm/lebesgue.hpp"
#include "varnorm/root_finding.hpp"

namespace varnorm {

FunctionSequence::FunctionSequence(GridPtr grid, int first_index,
                                   std::vector<SampledFunction> terms,
                                   std::optional<GeometricTail> tail)
    : grid_(std::move(grid)), first_(first_index), terms_(std::move(terms)), tail_(tail) {
  for (const auto& t : terms_) require_same_grid(grid_, t.grid(), "FunctionSequence");
  if (tail_) {
    if (terms_.empty()) throw std::invalid_argument("FunctionSequence: tail needs a first term");
    if (!(tail_->ratio > 0.0 && tail_->ratio < 1.0)) {
      throw std::invalid_argument("FunctionSequence: tail ratio must lie in (0, 1)");
    }
  }
}

FunctionSequence FunctionSequence::scaled(double factor) const {
  std::vector<SampledFunction> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.scaled(factor));
  return FunctionSequence(grid_, first_, std::move(out), tail_);
}

double inner_infimum(std::span<const double> moduli, const ExponentField& p,
                     const ExponentField& q) {
  const auto& grid = *p.grid();
  double constant = 0.0;  // cells with q = inf contribute independently of lambda
  double cap = 0.0;       // cells with p = inf force lambda >= |f|^q
  std::vector<ExpTerm> terms;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const double v = moduli[i];
    if (v == 0.0) continue;
    const bool p_inf = p.is_infinite(i);
    const bool q_inf = q.is_infinite(i);
    if (q_inf && p_inf) {
      if (v > 1.0) return kInf;
    } else if (q_inf) {
      constant += grid.measure(i) * std::pow(v, p[i]);
    } else if (p_inf) {
      cap = std::max(cap, std::pow(v, q[i]));
    } else {
      // m * (v / lambda^{1/q})^p = exp(log m + p log v - (p/q) log lambda)
      terms.push_back({std::log(grid.measure(i)) + p[i] * std::log(v), p[i] / q[i]});
    }
  }
  if (constant > 1.0 || (constant >= 1.0 && !terms.empty())) return kInf;
  if (terms.empty()) return cap;
  const double s = solve_exp_sum(terms, std::log1p(-constant));
  return std::max(cap, std::exp(s));
}

namespace {

// Smallest finite q over the support of f; inf when there is none.
double finite_q_minus(const SampledFunction& f, const ExponentField& q) {
  double out = kInf;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.abs(i) > 0.0 && !q.is_infinite(i)) out = std::min(out, q[i]);
  }
  return out;
}

struct TailSum {
  double value = 0.0;
  double remainder = 0.0;
  bool truncated = false;
};

// Adds term(j) for j = 1, 2, ... knowing term(j + 1) <= r * term(j). Stops once
// the geometric bound on what is left is negligible against the running total.
template <typename Term, typename Record>
TailSum sum_geometric_tail(Term&& term, double r, double running, Record&& record) {
  TailSum out;
  for (int j = 1; j <= kMaxTailTerms; ++j) {
    const double t = term(j);
    record(j, t);
    out.value += t;
    if (t == kInf) return out;
    const double bound = r < 1.0 ? t * r / (1.0 - r) : kInf;
    if (t == 0.0 || bound <= 1e-17 * (running + out.value)) {
      out.remainder = t == 0.0 ? 0.0 : bound;
      return out;
    }
    out.remainder = bound;
  }
  out.truncated = true;
  return out;
}

std::vector<double> scaled_moduli(const SampledFunction& f, double factor) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.abs(i) * factor;
  return out;
}

void require_fields(const FunctionSequence& seq, const ExponentField& p, const ExponentField& q,
                    const char* context) {
  require_same_grid(seq.grid(), p.grid(), context);
  require_same_grid(seq.grid(), q.grid(), context);
}

}  // namespace

MixedModularResult mixed_modular(const FunctionSequence& seq, const ExponentField& p,
                                 const ExponentField& q) {
  require_fields(seq, p, q, "mixed_modular");
  MixedModularResult out;
  int k = seq.first_index();
  for (const auto& f : seq.terms()) {
    const double lambda = inner_infimum(f.abs_values(), p, q);
    out.witnesses.emplace_back(k++, lambda);
    out.value += lambda;
    if (lambda == kInf) return out;
  }
  if (!seq.tail()) return out;

  const auto& head = seq.terms().front();
  const double rho = seq.tail()->ratio;
  const double qm = finite_q_minus(head, q);
  // lambda(rho g) <= rho^{q^-} lambda(g): scale lambda by rho^{q^-} and every
  // term in the inner modular shrinks.
  const double r = qm == kInf ? 0.0 : std::pow(rho, qm);
  const auto tail = sum_geometric_tail(
      [&](int j) { return inner_infimum(scaled_moduli(head, std::pow(rho, j)), p, q); }, r,
      out.value, [&](int j, double t) { out.witnesses.emplace_back(seq.first_index() - j, t); });
  out.value += tail.value;
  out.tail_remainder = tail.remainder;
  out.tail_truncated = tail.truncated;
  return out;
}

namespace {

// || phi_q(v) ||_{p/q} for one term; inf when a q = inf cell exceeds 1.
double easy_term(std::span<const double> moduli, const ExponentField& ratio_field,
                 const ExponentField& q) {
  std::vector<double> powered(moduli.size(), 0.0);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const double v = moduli[i];
    if (v == 0.0) continue;
    if (q.is_infinite(i)) {
      if (v > 1.0) return kInf;
      continue;  // phi_inf(v) = 0
    }
    powered[i] = std::pow(v, q[i]);
  }
  return luxemburg_norm(powered, ratio_field);
}

}  // namespace

double easy_modular(const FunctionSequence& seq, const ExponentField& p, const ExponentField& q) {
  require_fields(seq, p, q, "easy_modular");
  std::vector<double> ratio(p.size());
  bool q_below_p = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > p[i]) q_below_p = false;
    // q = inf only survives the precondition with p = inf; phi_q then vanishes
    // wherever it is finite, so the exponent on those cells is immaterial.
    ratio[i] = q.is_infinite(i) ? kInf : (p.is_infinite(i) ? kInf : p[i] / q[i]);
  }
  if (!(q.p_plus() < kInf || q_below_p)) {
    throw std::invalid_argument("easy_modular: needs q_plus < inf or q <= p pointwise");
  }
  const ExponentField ratio_field(p.grid(), std::move(ratio));

  double sum = 0.0;
  for (const auto& f : seq.terms()) {
    sum += easy_term(f.abs_values(), ratio_field, q);
    if (sum == kInf) return sum;
  }
  if (!seq.tail()) return sum;

  const auto& head = seq.terms().front();
  const double rho = seq.tail()->ratio;
  const double qm = finite_q_minus(head, q);
  const double r = qm == kInf ? 0.0 : std::pow(rho, qm);
  const auto tail = sum_geometric_tail(
      [&](int j) { return easy_term(scaled_moduli(head, std::pow(rho, j)), ratio_field, q); }, r,
      sum, [](int, double) {});
  return sum + tail.value;
}

double mixed_quasinorm(const FunctionSequence& seq, const ExponentField& p,
                       const ExponentField& q, QuasinormTrace* trace) {
  require_fields(seq, p, q, "mixed_quasinorm");
  double guess = 0.0;
  for (const auto& f : seq.terms()) guess += luxemburg_norm(f, p);
  if (guess == 0.0) return 0.0;
  guess *= 2.0;

  const auto feasible = [&](double mu) {
    const double value = mixed_modular(seq.scaled(1.0 / mu), p, q).value;
    if (trace) trace->steps.emplace_back(mu, value);
    return value <= 1.0;
  };
  const auto [lo, hi] = bracket_threshold(feasible, guess);
  if (lo == 0.0) return 0.0;
  return bisect_threshold(feasible, lo, hi);
}

FunctionSequence level_sequence_terms(const DyadicLevelSequence& levels) {
  if (levels.empty()) return FunctionSequence(levels.grid(), 0, {});
  std::vector<SampledFunction> terms;
  for (int k = levels.k_min(); k <= levels.k_max(); ++k) terms.push_back(levels.level(k));
  return FunctionSequence(levels.grid(), levels.k_min(), std::move(terms), GeometricTail{0.5});
}

}  // namespace varnorm
