#ifndef VARNORM_CORE_MODEL_HPP
#define VARNORM_CORE_MODEL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace varnorm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A single invariant violation. `cell` is empty for whole-object problems.
struct Diagnostic {
  std::string object;
  std::string message;
  std::optional<std::size_t> cell;

  std::string to_string() const;
};

// Thrown by constructors when the input breaks a model invariant.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Finite measure space made of cells with positive measure. A grid built
// from breakpoints x_0 < ... < x_N additionally carries 1-D interval geometry
// and cell i is [x_i, x_{i+1}).
class MeasureGrid {
 public:
  static std::shared_ptr<const MeasureGrid> from_measures(std::vector<double> measures);
  static std::shared_ptr<const MeasureGrid> from_breakpoints(std::vector<double> breakpoints);

  std::size_t size() const { return measures_.size(); }
  double measure(std::size_t cell) const { return measures_[cell]; }
  std::span<const double> measures() const { return measures_; }
  double total_measure() const { return total_; }

  bool has_geometry() const { return !breakpoints_.empty(); }
  // Empty when the grid is abstract.
  std::span<const double> breakpoints() const { return breakpoints_; }
  double left(std::size_t cell) const { return breakpoints_.at(cell); }
  double right(std::size_t cell) const { return breakpoints_.at(cell + 1); }
  double midpoint(std::size_t cell) const;

  bool operator==(const MeasureGrid& other) const {
    return measures_ == other.measures_ && breakpoints_ == other.breakpoints_;
  }

 private:
  MeasureGrid(std::vector<double> measures, std::vector<double> breakpoints);

  std::vector<double> measures_;
  std::vector<double> breakpoints_;
  double total_ = 0.0;
};

using GridPtr = std::shared_ptr<const MeasureGrid>;

bool same_grid(const GridPtr& a, const GridPtr& b);
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* context);

// Per-cell exponent in (0, inf]; +infinity marks the cells of the infinity set.
class ExponentField {
 public:
  ExponentField(GridPtr grid, std::vector<double> values);
  static ExponentField constant(GridPtr grid, double value);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t cell) const { return values_[cell]; }
  std::span<const double> values() const { return values_; }

  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  bool is_infinite(std::size_t cell) const { return values_[cell] == kInf; }
  bool has_infinite() const { return p_plus_ == kInf; }
  std::vector<std::uint8_t> infinity_mask() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  double p_minus_ = kInf;
  double p_plus_ = 0.0;
};

// Piecewise constant function on a grid; only the modulus enters the norms.
class SampledFunction {
 public:
  SampledFunction(GridPtr grid, std::vector<double> values);
  SampledFunction(GridPtr grid, std::vector<std::complex<double>> values);
  static SampledFunction zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::complex<double>& value(std::size_t cell) const { return values_[cell]; }
  std::span<const std::complex<double>> values() const { return values_; }
  double abs(std::size_t cell) const { return modulus_[cell]; }
  std::span<const double> abs_values() const { return modulus_; }

  double sup_abs() const;
  // Smallest strictly positive modulus, 0 when the function vanishes.
  double min_positive_abs() const;
  bool is_zero() const;

  SampledFunction scaled(double factor) const;
  SampledFunction scaled(std::complex<double> factor) const;
  SampledFunction operator+(const SampledFunction& other) const;

 private:
  void init_modulus();

  GridPtr grid_;
  std::vector<std::complex<double>> values_;
  std::vector<double> modulus_;
};

enum class LevelSet {
  Strict,     // {|f| > s}
  NonStrict,  // {|f| >= s}
};

// Indicator of {|f| > s} (or >= s) as a 0/1 mask.
std::vector<std::uint8_t> level_set(const SampledFunction& f, double s,
                                    LevelSet kind = LevelSet::Strict);

// The family (2^k chi_{|f| > 2^k})_k. Levels are stored for k_min..k_max; below
// k_min every indicator equals the support of f, above k_max it is empty.
class DyadicLevelSequence {
 public:
  DyadicLevelSequence(GridPtr grid, int k_min, std::vector<std::vector<std::uint8_t>> masks,
                      std::vector<std::uint8_t> support);

  const GridPtr& grid() const { return grid_; }
  bool empty() const { return masks_.empty(); }
  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(masks_.size()) - 1; }

  bool contains(int k, std::size_t cell) const;
  std::span<const std::uint8_t> mask(int k) const;
  std::span<const std::uint8_t> support() const { return support_; }
  SampledFunction level(int k) const;

 private:
  GridPtr grid_;
  int k_min_ = 0;
  std::vector<std::vector<std::uint8_t>> masks_;
  std::vector<std::uint8_t> support_;
  std::vector<std::uint8_t> empty_mask_;
};

DyadicLevelSequence build_level_sequence(const SampledFunction& f,
                                         LevelSet kind = LevelSet::Strict);

// floor(log2 x) and ceil(log2 x) for x > 0, exact for powers of two.
int floor_log2(double x);
int ceil_log2(double x);

// Raw, unvalidated inputs as they come from a file.
struct RawProblem {
  std::vector<double> measures;
  std::vector<double> breakpoints;
  std::vector<std::pair<std::string, std::vector<double>>> exponents;
  std::vector<std::pair<std::string, std::vector<std::complex<double>>>> functions;
};

// Reports every invariant violation; never throws.
std::vector<Diagnostic> validate(const RawProblem& problem);

}  // namespace varnorm

#endif  // VARNORM_CORE_MODEL_HPP
