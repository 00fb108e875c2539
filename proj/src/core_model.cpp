#include "varnorm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace varnorm {

namespace {

void check_measures(std::span<const double> measures, std::vector<Diagnostic>& out) {
  if (measures.empty()) {
    out.push_back({"grid", "grid must contain at least one cell", std::nullopt});
  }
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const double m = measures[i];
    if (!(m > 0.0) || !std::isfinite(m)) {
      out.push_back({"grid", "cell measure must be positive and finite", i});
    }
  }
}

void check_breakpoints(std::span<const double> x, std::vector<Diagnostic>& out) {
  if (x.size() < 2) {
    out.push_back({"grid", "at least two breakpoints are required", std::nullopt});
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      out.push_back({"grid", "breakpoint is not finite", i});
    } else if (i + 1 < x.size() && !(x[i] < x[i + 1])) {
      out.push_back({"grid", "breakpoints must be strictly increasing", i});
    }
  }
}

void check_exponent(const std::string& name, std::span<const double> values,
                    std::size_t cells, std::vector<Diagnostic>& out) {
  if (values.size() != cells) {
    out.push_back({name, "length " + std::to_string(values.size()) +
                             " does not match cell count " + std::to_string(cells),
                   std::nullopt});
  }
  bool positive = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isnan(v) || v <= 0.0) {
      out.push_back({name, "exponent must lie in (0, inf]", i});
      positive = false;
    }
  }
  if (!positive) out.push_back({name, "p_minus > 0 violated", std::nullopt});
}

template <typename T>
void check_function(const std::string& name, std::span<const T> values, std::size_t cells,
                    std::vector<Diagnostic>& out) {
  if (values.size() != cells) {
    out.push_back({name, "length " + std::to_string(values.size()) +
                             " does not match cell count " + std::to_string(cells),
                   std::nullopt});
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto v = std::complex<double>(values[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      out.push_back({name, "sample must be finite", i});
    }
  }
}

void throw_if_any(const std::vector<Diagnostic>& diagnostics) {
  if (!diagnostics.empty()) throw InvalidInput(diagnostics);
}

std::string join(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream os;
  for (std::size_t i = 0; i < diagnostics.size(); ++i) {
    if (i) os << "; ";
    os << diagnostics[i].to_string();
  }
  return os.str();
}

}  // namespace

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  os << object;
  if (cell) os << "[" << *cell << "]";
  os << ": " << message;
  return os.str();
}

InvalidInput::InvalidInput(std::vector<Diagnostic> diagnostics)
    : std::invalid_argument(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

// ---------------------------------------------------------------- MeasureGrid

MeasureGrid::MeasureGrid(std::vector<double> measures, std::vector<double> breakpoints)
    : measures_(std::move(measures)), breakpoints_(std::move(breakpoints)) {
  // Neumaier summation; grids in the counterexample mix cell sizes 1e-20..1.
  double sum = 0.0, comp = 0.0;
  for (double m : measures_) {
    const double t = sum + m;
    comp += std::abs(sum) >= std::abs(m) ? (sum - t) + m : (m - t) + sum;
    sum = t;
  }
  total_ = sum + comp;
}

std::shared_ptr<const MeasureGrid> MeasureGrid::from_measures(std::vector<double> measures) {
  std::vector<Diagnostic> diagnostics;
  check_measures(measures, diagnostics);
  throw_if_any(diagnostics);
  return std::shared_ptr<const MeasureGrid>(new MeasureGrid(std::move(measures), {}));
}

std::shared_ptr<const MeasureGrid> MeasureGrid::from_breakpoints(std::vector<double> breakpoints) {
  std::vector<Diagnostic> diagnostics;
  check_breakpoints(breakpoints, diagnostics);
  throw_if_any(diagnostics);
  std::vector<double> measures(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    measures[i] = breakpoints[i + 1] - breakpoints[i];
  }
  check_measures(measures, diagnostics);
  throw_if_any(diagnostics);
  return std::shared_ptr<const MeasureGrid>(
      new MeasureGrid(std::move(measures), std::move(breakpoints)));
}

double MeasureGrid::midpoint(std::size_t cell) const {
  return 0.5 * (left(cell) + right(cell));
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* context) {
  if (!same_grid(a, b)) {
    throw std::invalid_argument(std::string(context) + ": grid mismatch");
  }
}

// -------------------------------------------------------------- ExponentField

ExponentField::ExponentField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("ExponentField: null grid");
  std::vector<Diagnostic> diagnostics;
  check_exponent("exponent", values_, grid_->size(), diagnostics);
  throw_if_any(diagnostics);
  for (double v : values_) {
    p_minus_ = std::min(p_minus_, v);
    p_plus_ = std::max(p_plus_, v);
  }
}

ExponentField ExponentField::constant(GridPtr grid, double value) {
  const std::size_t n = grid ? grid->size() : 0;
  return ExponentField(std::move(grid), std::vector<double>(n, value));
}

std::vector<std::uint8_t> ExponentField::infinity_mask() const {
  std::vector<std::uint8_t> mask(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) mask[i] = is_infinite(i) ? 1 : 0;
  return mask;
}

// ------------------------------------------------------------ SampledFunction

SampledFunction::SampledFunction(GridPtr grid, std::vector<double> values)
    : SampledFunction(std::move(grid),
                      std::vector<std::complex<double>>(values.begin(), values.end())) {}

SampledFunction::SampledFunction(GridPtr grid, std::vector<std::complex<double>> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("SampledFunction: null grid");
  std::vector<Diagnostic> diagnostics;
  check_function<std::complex<double>>("function", values_, grid_->size(), diagnostics);
  throw_if_any(diagnostics);
  init_modulus();
}

SampledFunction SampledFunction::zero(GridPtr grid) {
  const std::size_t n = grid->size();
  return SampledFunction(std::move(grid), std::vector<double>(n, 0.0));
}

void SampledFunction::init_modulus() {
  modulus_.resize(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    modulus_[i] = values_[i].imag() == 0.0 ? std::abs(values_[i].real()) : std::abs(values_[i]);
  }
}

double SampledFunction::sup_abs() const {
  double m = 0.0;
  for (double v : modulus_) m = std::max(m, v);
  return m;
}

double SampledFunction::min_positive_abs() const {
  double m = kInf;
  for (double v : modulus_) {
    if (v > 0.0) m = std::min(m, v);
  }
  return m == kInf ? 0.0 : m;
}

bool SampledFunction::is_zero() const {
  return std::all_of(modulus_.begin(), modulus_.end(), [](double v) { return v == 0.0; });
}

SampledFunction SampledFunction::scaled(double factor) const {
  return scaled(std::complex<double>(factor, 0.0));
}

SampledFunction SampledFunction::scaled(std::complex<double> factor) const {
  std::vector<std::complex<double>> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out[i] = factor.imag() == 0.0 ? values_[i] * factor.real() : values_[i] * factor;
  }
  return SampledFunction(grid_, std::move(out));
}

SampledFunction SampledFunction::operator+(const SampledFunction& other) const {
  require_same_grid(grid_, other.grid_, "SampledFunction::operator+");
  std::vector<std::complex<double>> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] + other.values_[i];
  return SampledFunction(grid_, std::move(out));
}

std::vector<std::uint8_t> level_set(const SampledFunction& f, double s, LevelSet kind) {
  std::vector<std::uint8_t> mask(f.size());
  const auto values = f.abs_values();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = kind == LevelSet::Strict ? (values[i] > s) : (values[i] >= s);
  }
  return mask;
}

// -------------------------------------------------------- DyadicLevelSequence

int floor_log2(double x) {
  int e = 0;
  std::frexp(x, &e);  // x = m 2^e, m in [0.5, 1)
  return e - 1;
}

int ceil_log2(double x) {
  int e = 0;
  const double m = std::frexp(x, &e);
  return m == 0.5 ? e - 1 : e;
}

DyadicLevelSequence::DyadicLevelSequence(GridPtr grid, int k_min,
                                         std::vector<std::vector<std::uint8_t>> masks,
                                         std::vector<std::uint8_t> support)
    : grid_(std::move(grid)),
      k_min_(k_min),
      masks_(std::move(masks)),
      support_(std::move(support)),
      empty_mask_(grid_->size(), 0) {}

bool DyadicLevelSequence::contains(int k, std::size_t cell) const {
  return mask(k)[cell] != 0;
}

std::span<const std::uint8_t> DyadicLevelSequence::mask(int k) const {
  if (masks_.empty() || k > k_max()) return empty_mask_;
  if (k < k_min_) return support_;
  return masks_[static_cast<std::size_t>(k - k_min_)];
}

SampledFunction DyadicLevelSequence::level(int k) const {
  const auto m = mask(k);
  const double scale = std::ldexp(1.0, k);
  std::vector<double> values(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) values[i] = m[i] ? scale : 0.0;
  return SampledFunction(grid_, std::move(values));
}

DyadicLevelSequence build_level_sequence(const SampledFunction& f, LevelSet kind) {
  const auto support = level_set(f, 0.0, LevelSet::Strict);
  if (f.is_zero()) return DyadicLevelSequence(f.grid(), 0, {}, support);

  // Below k_min every level set is the support; at k_max it is already empty.
  const int k_min = floor_log2(f.min_positive_abs()) - 1;
  const double top = f.sup_abs();
  const int k_max = kind == LevelSet::Strict ? ceil_log2(top) : floor_log2(top) + 1;

  std::vector<std::vector<std::uint8_t>> masks;
  masks.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) masks.push_back(level_set(f, std::ldexp(1.0, k), kind));
  return DyadicLevelSequence(f.grid(), k_min, std::move(masks), support);
}

// ------------------------------------------------------------------- validate

std::vector<Diagnostic> validate(const RawProblem& problem) {
  std::vector<Diagnostic> out;
  std::size_t cells = problem.measures.size();
  if (!problem.breakpoints.empty()) {
    check_breakpoints(problem.breakpoints, out);
    const std::size_t n = problem.breakpoints.size() - 1;
    std::vector<double> lengths(n);
    for (std::size_t i = 0; i < n; ++i) {
      lengths[i] = problem.breakpoints[i + 1] - problem.breakpoints[i];
    }
    if (!problem.measures.empty()) {
      if (problem.measures.size() != n) {
        out.push_back({"grid", "measures and breakpoints disagree in length", std::nullopt});
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (problem.measures[i] != lengths[i]) {
            out.push_back({"grid", "measure differs from interval length", i});
          }
        }
      }
    }
    cells = n;
    if (out.empty()) check_measures(lengths, out);
  } else {
    check_measures(problem.measures, out);
  }
  for (const auto& [name, values] : problem.exponents) check_exponent(name, values, cells, out);
  for (const auto& [name, values] : problem.functions) {
    check_function<std::complex<double>>(name, values, cells, out);
  }
  return out;
}

}  // namespace varnorm
