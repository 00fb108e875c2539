#ifndef VARNORM_PROBLEM_IO_HPP
#define VARNORM_PROBLEM_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "varnorm/core_model.hpp"

namespace varnorm {

inline constexpr int kProblemFormat = 1;

// In-memory form of a problem file:
//   {"format": 1,
//    "grid": {"measures": [...]} or {"breakpoints": [...]},
//    "f": [x, [re, im], ...], "g": [...] (optional),
//    "p": [x, "inf", ...], "q": [...] (optional),
//    "params": {...} (optional, free-form command parameters)}
struct Problem {
  GridPtr grid;
  SampledFunction f;
  std::optional<SampledFunction> g;
  ExponentField p;
  std::optional<ExponentField> q;
  nlohmann::json params = nlohmann::json::object();
};

// Throws InvalidInput carrying every structural and invariant violation found.
Problem problem_from_json(const nlohmann::json& doc);
nlohmann::json problem_to_json(const Problem& problem);

Problem load_problem(const std::string& path);
void save_problem(const Problem& problem, const std::string& path);

// 12 significant digits in scientific notation, "inf"/"-inf"/"nan" otherwise;
// independent of the locale.
std::string format_number(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace varnorm

#endif  // VARNORM_PROBLEM_IO_HPP
