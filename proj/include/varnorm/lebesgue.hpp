#ifndef VARNORM_LEBESGUE_HPP
#define VARNORM_LEBESGUE_HPP

#include <cstdint>
#include <span>

#include "varnorm/core_model.hpp"

namespace varnorm {

// phi_p(t): t^p for finite p; for p = inf it is 0 on [0,1] and inf beyond.
double phi(double p, double t);

// rho_p(f / lambda) = sum_cells measure * phi_{p(x)}(|f(x)| / lambda).
// The result may be +inf.
double modular(const SampledFunction& f, const ExponentField& p, double lambda = 1.0);

// Luxemburg (quasi-)norm inf{lambda > 0 : rho_p(f / lambda) <= 1}. Cells with
// p = inf act as the hard cap |f| <= lambda.
double luxemburg_norm(const SampledFunction& f, const ExponentField& p);

// Same, for raw moduli aligned with p's grid.
double luxemburg_norm(std::span<const double> moduli, const ExponentField& p);

// ||chi_E||_{p(.)} for the cell set E given as a 0/1 mask.
double indicator_norm(std::span<const std::uint8_t> mask, const ExponentField& p);

}  // namespace varnorm

#endif  // VARNORM_LEBESGUE_HPP
