// Command-line front end: norms, K-functionals, verifications and sweeps.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "varnorm/families.hpp"
#include "varnorm/interpolation.hpp"
#include "varnorm/lebesgue.hpp"
#include "varnorm/lorentz_variable.hpp"
#include "varnorm/operators.hpp"
#include "varnorm/problem_io.hpp"
#include "varnorm/rearrangement.hpp"

using namespace varnorm;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string input;
  std::string csv;
  std::uint64_t seed = 0;

  std::string space = "lebesgue";
  std::optional<double> q_const;

  double theta = 0.5;
  double q = 2.0;
  std::vector<double> t_grid;
  std::string endpoint = "lebesgue";

  std::string kind;
  int samples = 50;
  std::optional<double> p_const;

  double epsilon = 0.25;
  double delta_min = 0x1p-64;
  int cells_per_decade = 40;
};

std::string fmt(double v) { return format_number(v); }

void emit_csv(const Options& opt, const CsvTable& table) {
  if (!opt.csv.empty()) table.write(opt.csv);
}

double constant_value(const ExponentField& e, const char* what) {
  if (e.p_minus() != e.p_plus()) {
    throw std::invalid_argument(std::string(what) + " must be constant for this command");
  }
  return e.p_minus();
}

double param_or(const Problem& pr, const char* key, double fallback) {
  if (!pr.params.contains(key)) return fallback;
  const auto& v = pr.params[key];
  if (v.is_string() && v.get<std::string>() == "inf") return kInf;
  return v.get<double>();
}

std::uint64_t effective_seed(const Options& opt) { return seed_from_env(opt.seed); }

int run_norm(const Options& opt) {
  const auto pr = load_problem(opt.input);
  double value = 0.0;
  std::optional<double> q_used;
  if (opt.space == "lebesgue") {
    value = luxemburg_norm(pr.f, pr.p);
  } else if (opt.space == "classical") {
    const double q = opt.q_const ? *opt.q_const
                                 : (pr.q ? constant_value(*pr.q, "q") : param_or(pr, "q", kInf));
    value = classical_lorentz_norm(pr.f, constant_value(pr.p, "p"), q);
    q_used = q;
  } else if (opt.space == "lorentz-qconst") {
    const double q = opt.q_const ? *opt.q_const
                                 : (pr.q ? constant_value(*pr.q, "q") : param_or(pr, "q", kInf));
    value = lorentz_norm_qconst(pr.f, pr.p, q);
    q_used = q;
  } else if (opt.space == "lorentz-var") {
    const auto q = pr.q ? *pr.q
                        : (opt.q_const ? ExponentField::constant(pr.grid, *opt.q_const)
                                       : throw std::invalid_argument("lorentz-var needs a q field or --q"));
    value = lorentz_quasinorm(pr.f, pr.p, q);
  } else {
    throw std::invalid_argument("unknown space " + opt.space);
  }
  std::printf("%s norm: %.6f\n", opt.space.c_str(), value);
  if (q_used) std::printf("q = %s\n", fmt(*q_used).c_str());
  CsvTable table({"space", "value"});
  table.add_row({opt.space, fmt(value)});
  emit_csv(opt, table);
  return 0;
}

Endpoint parse_endpoint(const std::string& name) {
  if (name == "lebesgue") return Endpoint::Lebesgue;
  if (name == "weak") return Endpoint::WeakLorentz;
  throw std::invalid_argument("unknown endpoint " + name);
}

int run_kfun(const Options& opt) {
  const auto pr = load_problem(opt.input);
  const auto endpoint = parse_endpoint(opt.endpoint);
  const KFunctional K(pr.f, pr.p, endpoint);
  std::vector<double> ts = opt.t_grid;
  if (ts.empty()) {
    for (int j = -10; j <= 10; j += 2) ts.push_back(std::ldexp(1.0, j));
  }
  CsvTable table({"t", "K", "mu"});
  std::printf("%-14s %-14s %-14s\n", "t", "K(f,t)", "mu");
  for (double t : ts) {
    const auto k = pr.f.is_zero() ? KValue{0.0, 0.0} : K.minimize(t);
    std::printf("%-14s %-14s %-14s\n", fmt(t).c_str(), fmt(k.value).c_str(), fmt(k.mu).c_str());
    table.add_row({fmt(t), fmt(k.value), fmt(k.mu)});
  }
  const auto r = real_interp_norm(pr.f, InterpolationParams(opt.theta, opt.q), pr.p, endpoint);
  std::printf("interpolation norm (theta=%g, q=%s): %.6f%s\n", opt.theta, fmt(opt.q).c_str(),
              r.value, r.window_found ? "" : " [t-window not certified]");
  emit_csv(opt, table);
  return 0;
}

void print_report(const VerificationReport& r) {
  std::printf("%s: %s (worst slack %s, tolerance %s)\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
              fmt(r.worst_slack).c_str(), fmt(r.tolerance).c_str());
  for (const auto& [key, value] : r.constants) std::printf("  %s = %s\n", key.c_str(), fmt(value).c_str());
}

ExponentField family_exponent(Rng& rng, const GridPtr& grid, const Options& opt, double lo, double hi) {
  return opt.p_const ? ExponentField::constant(grid, *opt.p_const) : random_exponent(rng, grid, lo, hi);
}

int run_verify(const Options& opt) {
  const bool from_file = !opt.input.empty();
  std::optional<Problem> pr;
  if (from_file) pr = load_problem(opt.input);
  Rng rng(effective_seed(opt));
  const int n = from_file ? 1 : opt.samples;
  CsvTable table({"sample", "pass", "worst_slack", "value"});
  VerificationReport total(opt.kind, 0.0);
  bool first = true;

  const auto add = [&](int i, const VerificationReport& r, double value) {
    if (first) {
      total = r;
      total.slacks.clear();
      total.worst_slack = kInf;
      total.pass = true;
      total.constants.clear();
      first = false;
    }
    total.merge(r);
    table.add_row({std::to_string(i), r.pass ? "1" : "0", fmt(r.worst_slack), fmt(value)});
  };

  if (opt.kind == "identity") {
    for (int i = 0; i < n; ++i) {
      const auto grid = from_file ? pr->grid : random_grid(rng, 8 + rng.index(57));
      const auto p = from_file ? pr->p : family_exponent(rng, grid, opt, 0.5, 8.0);
      const auto f = from_file ? pr->f : random_function(rng, grid);
      const auto r = verify_identity_Lpp(f, p);
      add(i, r, r.constants.at("c"));
    }
  } else if (opt.kind == "quasi-triangle") {
    for (int i = 0; i < n; ++i) {
      const auto grid = from_file ? pr->grid : random_grid(rng, 8 + rng.index(25));
      const auto p = from_file ? pr->p : family_exponent(rng, grid, opt, 0.5, 8.0);
      const auto q = from_file ? (pr->q ? *pr->q : pr->p) : random_exponent(rng, grid, 0.5, 8.0);
      const auto f = from_file ? pr->f : random_function(rng, grid);
      const auto g = from_file ? (pr->g ? *pr->g : pr->f.scaled(-1.0)) : random_function(rng, grid);
      const auto r = verify_quasi_triangle(f, g, p, q);
      const auto it = r.constants.find("quasi_triangle_max");
      add(i, r, it == r.constants.end() ? 0.0 : it->second);
    }
  } else if (opt.kind == "embeddings") {
    std::vector<EmbeddingSample> family;
    for (int i = 0; i < n; ++i) {
      const auto grid = from_file ? pr->grid : random_grid(rng, 8 + rng.index(25), 0.01, 0.2);
      const auto p0 = from_file ? pr->p : family_exponent(rng, grid, opt, 0.5, 4.0);
      std::vector<double> p1(p0.size()), q1;
      const double factor = rng.uniform(1.2, 3.0);
      for (std::size_t c = 0; c < p1.size(); ++c) p1[c] = p0[c] * factor * rng.uniform(1.0, 1.5);
      const auto q0 = from_file ? (pr->q ? *pr->q : pr->p) : random_exponent(rng, grid, 0.5, 4.0);
      for (std::size_t c = 0; c < p1.size(); ++c) q1.push_back(q0[c] * rng.uniform(1.0, 2.0));
      const auto set = from_file ? level_set(pr->f, 0.0) : random_set(rng, grid, 1.0);
      std::vector<double> fv(grid->size(), 0.0);
      const auto base = from_file ? pr->f : random_function(rng, grid);
      for (std::size_t c = 0; c < fv.size(); ++c) fv[c] = set[c] ? base.abs(c) : 0.0;
      family.push_back({SampledFunction(grid, fv), set, p0, ExponentField(grid, p1), q0,
                        ExponentField(grid, q1), rng.uniform(0.5, 8.0)});
    }
    const auto r = verify_embeddings(family);
    int i = 0;
    for (const auto* part : {&r.bddsupp, &r.linf_q, &r.q_monotone, &r.p_embedding, &r.p_monotone}) {
      print_report(*part);
      table.add_row({part->name, part->pass ? "1" : "0", fmt(part->worst_slack), fmt(0.0)});
      ++i;
    }
    emit_csv(opt, table);
    return r.pass() ? 0 : kExitFail;
  } else if (opt.kind == "interpolation") {
    const InterpolationParams params(opt.theta, opt.q);
    if (from_file) {
      const auto r = verify_interpolation_theorem(std::vector<SampledFunction>{pr->f}, pr->p, params);
      add(0, r, r.constants.count("ratio_max") ? r.constants.at("ratio_max") : 0.0);
    } else {
      const auto grid = random_grid(rng, 32);
      const auto p = family_exponent(rng, grid, opt, 1.0, 8.0);
      for (int i = 0; i < n; ++i) {
        const auto f = random_function(rng, grid);
        const auto r = verify_interpolation_theorem(std::vector<SampledFunction>{f}, p, params);
        add(i, r, r.constants.count("ratio_max") ? r.constants.at("ratio_max") : 0.0);
      }
    }
  } else if (opt.kind == "lemma-equiv") {
    for (int i = 0; i < n; ++i) {
      const auto grid = from_file ? pr->grid : random_grid(rng, 8 + rng.index(25));
      const auto p = from_file ? pr->p : family_exponent(rng, grid, opt, 0.5, 8.0);
      const auto q = from_file ? (pr->q ? *pr->q : pr->p) : random_exponent(rng, grid, 0.5, 8.0);
      const auto f = from_file ? pr->f : random_function(rng, grid);
      VerificationReport r("lemma-equiv", 0.0);
      const double a = lorentz_quasinorm(f, p, q);
      const double b = lorentz_equiv_expression(f, p, q);
      const double ratio = b > 0.0 ? a / b : 1.0;
      r.record(ratio >= 0.125 && ratio <= 8.0 ? 0.0 : -1.0);
      r.observe("ratio", ratio);
      add(i, r, ratio);
    }
  } else {
    throw std::invalid_argument("unknown verification " + opt.kind);
  }
  print_report(total);
  emit_csv(opt, table);
  return total.pass ? 0 : kExitFail;
}

int run_counterexample(const Options& opt) {
  const auto deltas = squaring_deltas(opt.delta_min);
  const auto rows = counterexample_sweep(opt.epsilon, deltas, opt.cells_per_decade);
  CsvTable table({"delta", "cells", "norm_f_L4", "norm_Tf_L43", "weak_ratio_pi0", "weak_ratio_pi1"});
  std::printf("epsilon = %g\n%-20s %-7s %-20s %-20s %-20s %-20s\n", opt.epsilon, "delta", "cells",
              "norm_f_L4", "norm_Tf_L43", "weak_ratio_pi0", "weak_ratio_pi1");
  for (const auto& r : rows) {
    std::vector<std::string> cells{fmt(r.delta), std::to_string(r.cells), fmt(r.norm_f_L4),
                                   fmt(r.norm_Tf_L43), fmt(r.weak_ratio_pi0), fmt(r.weak_ratio_pi1)};
    std::printf("%-20s %-7s %-20s %-20s %-20s %-20s\n", cells[0].c_str(), cells[1].c_str(),
                cells[2].c_str(), cells[3].c_str(), cells[4].c_str(), cells[5].c_str());
    table.add_row(std::move(cells));
  }
  emit_csv(opt, table);
  return 0;
}

int run_question28(const Options& opt) {
  const auto pred = marcinkiewicz_predicate(2.0, kInf, 1.0, 2.0, opt.theta);
  std::printf("constituents (p0,q0) = (2,1), (p1,q1) = (inf,2), theta = %g\n", opt.theta);
  std::printf("interpolated p = %s, q = %s, p <= q: %s\n", fmt(pred.p).c_str(), fmt(pred.q).c_str(),
              pred.condition_holds ? "TRUE" : "FALSE");
  const auto res = question28_experiment(opt.theta, opt.epsilon, squaring_deltas(opt.delta_min),
                                         opt.cells_per_decade);
  std::printf("pi_theta = %s on [0,1), %s on [1,2]\n", fmt(res.pi_theta_left).c_str(),
              fmt(res.pi_theta_right).c_str());
  CsvTable table({"delta", "cells", "weak_ratio_pi0", "weak_ratio_pi1", "strong_ratio"});
  for (const auto& r : res.rows) {
    std::vector<std::string> cells{fmt(r.delta), std::to_string(r.cells), fmt(r.weak_ratio_pi0),
                                   fmt(r.weak_ratio_pi1), fmt(r.strong_ratio)};
    std::printf("%s\n", (cells[0] + "  " + cells[1] + "  " + cells[2] + "  " + cells[3] + "  " + cells[4]).c_str());
    table.add_row(std::move(cells));
  }
  print_report(res.weak);
  print_report(res.strong);
  emit_csv(opt, table);
  return res.weak.pass && res.strong.pass ? 0 : kExitFail;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-exponent Lebesgue and Lorentz norms, K-functionals and the Hardy-operator counterexample"};
  app.require_subcommand(1);
  Options opt;
  std::string t_grid_text;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--csv", opt.csv, "Write machine-readable CSV to this path");
    cmd->add_option("--seed", opt.seed, "Seed for random families (VARNORM_SEED overrides)");
  };

  auto* norm = app.add_subcommand("norm", "Norm of f from a problem file");
  norm->add_option("input", opt.input, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  norm->add_option("--space", opt.space, "lebesgue | classical | lorentz-qconst | lorentz-var")
      ->check(CLI::IsMember({"lebesgue", "classical", "lorentz-qconst", "lorentz-var"}));
  norm->add_option("--q", opt.q_const, "Constant secondary exponent (number or inf)");
  add_common(norm);

  auto* kfun = app.add_subcommand("kfun", "K-functional and real interpolation norm");
  kfun->add_option("input", opt.input, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  kfun->add_option("--theta", opt.theta, "Interpolation parameter in (0,1)");
  kfun->add_option("--q", opt.q, "Interpolation exponent q");
  kfun->add_option("--t-grid", t_grid_text, "Comma-separated t values");
  kfun->add_option("--endpoint", opt.endpoint, "lebesgue | weak")
      ->check(CLI::IsMember({"lebesgue", "weak"}));
  add_common(kfun);

  auto* verify = app.add_subcommand("verify", "Check an identity or inequality");
  verify->add_option("kind", opt.kind, "identity | quasi-triangle | embeddings | interpolation | lemma-equiv")
      ->required()
      ->check(CLI::IsMember({"identity", "quasi-triangle", "embeddings", "interpolation", "lemma-equiv"}));
  verify->add_option("input", opt.input, "Problem file; a random family is used when omitted")
      ->check(CLI::ExistingFile);
  verify->add_option("--samples", opt.samples, "Size of the random family");
  verify->add_option("--p-const", opt.p_const, "Use this constant exponent for p");
  verify->add_option("--theta", opt.theta, "Interpolation parameter");
  verify->add_option("--q", opt.q, "Interpolation exponent");
  add_common(verify);

  auto* counter = app.add_subcommand("counterexample", "Hardy operator sweep over delta");
  counter->add_option("--epsilon", opt.epsilon, "Exponent epsilon of the test function");
  counter->add_option("--delta-min", opt.delta_min, "Smallest delta (2^-8 squared repeatedly)");
  counter->add_option("--cells-per-decade", opt.cells_per_decade, "Geometric grid density");
  add_common(counter);

  auto* q28 = app.add_subcommand("question28", "Glued-exponent experiment");
  q28->add_option("--theta", opt.theta, "Interpolation parameter");
  q28->add_option("--epsilon", opt.epsilon, "Exponent epsilon of the test function");
  q28->add_option("--delta-min", opt.delta_min, "Smallest delta");
  q28->add_option("--cells-per-decade", opt.cells_per_decade, "Geometric grid density");
  add_common(q28);

  CLI11_PARSE(app, argc, argv);
  try {
    opt.t_grid = parse_list(t_grid_text);
    if (norm->parsed()) return run_norm(opt);
    if (kfun->parsed()) return run_kfun(opt);
    if (verify->parsed()) return run_verify(opt);
    if (counter->parsed()) return run_counterexample(opt);
    if (q28->parsed()) return run_question28(opt);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input:\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d.to_string() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
