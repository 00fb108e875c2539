#ifndef VARNORM_LORENTZ_VARIABLE_HPP
#define VARNORM_LORENTZ_VARIABLE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "varnorm/core_model.hpp"

namespace varnorm {

// Distinct positive values w_1 < ... < w_r of |f| and H_j = ||chi_{|f| >= w_j}||_p.
// h(lambda) = ||chi_{|f| > lambda}||_p equals H_j on [w_{j-1}, w_j), and
// ||chi_{|f| >= lambda}||_p equals H_j on (w_{j-1}, w_j], with w_0 = 0.
struct LevelSetNorms {
  std::vector<double> levels;
  std::vector<double> norms;
};
LevelSetNorms level_set_norms(const SampledFunction& f, const ExponentField& p);

// (int_0^inf lambda^q h(lambda)^q dlambda/lambda)^{1/q}, sup lambda h(lambda) for q = inf.
double lorentz_norm_qconst(const SampledFunction& f, const ExponentField& p, double q);

// inf{lambda > 0 : rho_{l_q(L_p)}((2^k chi_{|f/lambda| > 2^k})_k) <= 1}.
double lorentz_quasinorm(const SampledFunction& f, const ExponentField& p, const ExponentField& q);

// ||(2^k chi_{|f| > 2^k})_k||_{l_q(L_p)}.
double lorentz_equiv_expression(const SampledFunction& f, const ExponentField& p,
                                const ExponentField& q);

// Relative slack of lhs <= rhs: nonnegative when it holds.
double relative_slack(double lhs, double rhs);

struct VerificationReport {
  std::string name;
  std::vector<double> slacks;
  double worst_slack = kInf;
  double tolerance = 0.0;
  bool pass = true;
  std::map<std::string, double> constants;

  VerificationReport() = default;
  VerificationReport(std::string name, double tolerance);

  void record(double slack);
  // Tracks the running minimum and maximum of a reported constant under
  // "<key>_min" / "<key>_max".
  void observe(const std::string& key, double value);
  void merge(const VerificationReport& other);
};

// c = (1 - 2^{-p})^{-1/p}.
double identity_constant(double p_minus);

// rho_p(f/2) <= rho_{l_p(L_p)}(levels of f) <= rho_p(c f) on the finite-exponent
// part of f, and (1/2)||f||_p <= ||f||_{p,p} <= c ||f||_p for f and its part on
// the infinity set.
VerificationReport verify_identity_Lpp(const SampledFunction& f, const ExponentField& p,
                                       double tolerance = 1e-9);

// chi_{|f+g| > 2^k} <= chi_{|f| > 2^{k-1}} + chi_{|g| > 2^{k-1}} cell by cell; records
// ||f+g|| / (||f|| + ||g||) in L_{p,q} as "quasi_triangle".
VerificationReport verify_quasi_triangle(const SampledFunction& f, const SampledFunction& g,
                                         const ExponentField& p, const ExponentField& q);

struct EmbeddingSample {
  SampledFunction f;              // supported in a set of total measure <= 1
  std::vector<std::uint8_t> set;  // A with mu(A) <= 1
  ExponentField p0, p1;           // p0 <= p1 and (p1/p0)^- > 1
  ExponentField q0, q1;           // q0 <= q1
  double q_const;                 // constant q for L_{inf,q}
};

struct EmbeddingReport {
  VerificationReport bddsupp;         // ||chi_A||_{p0} <= ||chi_A||_{p1}^alpha
  VerificationReport linf_q;          // L_{inf,q} = L_inf with constant q^{-1/q}
  VerificationReport q_monotone;      // ||f||_{p0,q1} / ||f||_{p0,q0}
  VerificationReport p_embedding;     // ||f||_{p0,q0} / ||f||_{p1,q1}, bounded support
  VerificationReport p_monotone;      // ||f||_{p0,q0} / ||f||_{p1,q0}, bounded support

  bool pass() const;
};

EmbeddingReport verify_embeddings(std::span<const EmbeddingSample> family);

}  // namespace varnorm

#endif  // VARNORM_LORENTZ_VARIABLE_HPP
