#ifndef VARNORM_MIXED_SEQUENCE_HPP
#define VARNORM_MIXED_SEQUENCE_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "varnorm/core_model.hpp"

namespace varnorm {

// Geometric continuation below the stored window: f_{first - j} = ratio^j * f_first
// for every j >= 1. Level sequences need it because 2^k chi_{|f| > 2^k} equals
// 2^k chi_supp for all k below the window.
struct GeometricTail {
  double ratio;  // in (0, 1)
};

// (f_k)_{k >= first_index - tail}, all on one grid.
class FunctionSequence {
 public:
  FunctionSequence(GridPtr grid, int first_index, std::vector<SampledFunction> terms,
                   std::optional<GeometricTail> tail = std::nullopt);

  const GridPtr& grid() const { return grid_; }
  int first_index() const { return first_; }
  int last_index() const { return first_ + static_cast<int>(terms_.size()) - 1; }
  bool empty() const { return terms_.empty(); }
  const std::vector<SampledFunction>& terms() const { return terms_; }
  const std::optional<GeometricTail>& tail() const { return tail_; }

  FunctionSequence scaled(double factor) const;

 private:
  GridPtr grid_;
  int first_ = 0;
  std::vector<SampledFunction> terms_;
  std::optional<GeometricTail> tail_;
};

struct MixedModularResult {
  double value = 0.0;
  // (k, lambda_k) for every evaluated index, tail indices included.
  std::vector<std::pair<int, double>> witnesses;
  // Upper bound on the part of the tail that was not summed.
  double tail_remainder = 0.0;
  bool tail_truncated = false;
};

// Hard cap on evaluated tail terms.
inline constexpr int kMaxTailTerms = 10000;

// inf{lambda > 0 : rho_p(f / lambda^{1/q}) <= 1} with lambda^{1/inf} = 1.
// Returns inf when no lambda is feasible.
double inner_infimum(std::span<const double> moduli, const ExponentField& p,
                     const ExponentField& q);

// rho_{l_q(L_p)}((f_k)_k) = sum_k inner_infimum(f_k).
MixedModularResult mixed_modular(const FunctionSequence& seq, const ExponentField& p,
                                 const ExponentField& q);

// sum_k || phi_q(|f_k|) ||_{p/q}. Requires q_plus < inf or q <= p on every cell.
double easy_modular(const FunctionSequence& seq, const ExponentField& p, const ExponentField& q);

struct QuasinormTrace {
  std::vector<std::pair<double, double>> steps;  // (mu, modular(seq / mu))
};

// inf{mu > 0 : rho_{l_q(L_p)}(seq / mu) <= 1}.
double mixed_quasinorm(const FunctionSequence& seq, const ExponentField& p,
                       const ExponentField& q, QuasinormTrace* trace = nullptr);

// The sequence (2^k chi_{|f| > 2^k})_k with its lower tail.
FunctionSequence level_sequence_terms(const DyadicLevelSequence& levels);

}  // namespace varnorm

#endif  // VARNORM_MIXED_SEQUENCE_HPP
