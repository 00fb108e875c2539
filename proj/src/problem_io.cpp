#include "varnorm/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace varnorm {

using nlohmann::json;

namespace {

struct Reader {
  std::vector<Diagnostic> diagnostics;

  void fail(const std::string& object, const std::string& message,
            std::optional<std::size_t> cell = std::nullopt) {
    diagnostics.push_back({object, message, cell});
  }

  std::vector<double> numbers(const json& arr, const std::string& name, bool allow_inf) {
    std::vector<double> out;
    if (!arr.is_array()) {
      fail(name, "expected an array");
      return out;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& v = arr[i];
      if (v.is_number()) {
        out.push_back(v.get<double>());
      } else if (allow_inf && v.is_string() && v.get<std::string>() == "inf") {
        out.push_back(kInf);
      } else {
        fail(name, allow_inf ? "expected a number or \"inf\"" : "expected a number", i);
        out.push_back(std::nan(""));
      }
    }
    return out;
  }

  std::vector<std::complex<double>> samples(const json& arr, const std::string& name) {
    std::vector<std::complex<double>> out;
    if (!arr.is_array()) {
      fail(name, "expected an array");
      return out;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& v = arr[i];
      if (v.is_number()) {
        out.emplace_back(v.get<double>(), 0.0);
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        out.emplace_back(v[0].get<double>(), v[1].get<double>());
      } else {
        fail(name, "expected a number or [re, im]", i);
        out.emplace_back(std::nan(""), 0.0);
      }
    }
    return out;
  }
};

json sample_to_json(const std::complex<double>& v) {
  if (v.imag() != 0.0 || std::signbit(v.imag())) return json::array({v.real(), v.imag()});
  return v.real();
}

json exponent_to_json(double v) { return v == kInf ? json("inf") : json(v); }

}  // namespace

Problem problem_from_json(const json& doc) {
  Reader r;
  if (!doc.is_object()) throw InvalidInput({{"file", "top level must be an object", std::nullopt}});
  if (!doc.contains("format")) {
    r.fail("format", "missing field");
  } else if (!doc["format"].is_number_integer() || doc["format"].get<int>() != kProblemFormat) {
    r.fail("format", "unsupported format version, expected 1");
  }

  RawProblem raw;
  if (!doc.contains("grid") || !doc["grid"].is_object()) {
    r.fail("grid", "missing object");
  } else {
    const auto& grid = doc["grid"];
    const bool has_m = grid.contains("measures");
    const bool has_b = grid.contains("breakpoints");
    if (has_m == has_b) {
      r.fail("grid", "give exactly one of \"measures\" or \"breakpoints\"");
    } else if (has_m) {
      raw.measures = r.numbers(grid["measures"], "grid.measures", false);
    } else {
      raw.breakpoints = r.numbers(grid["breakpoints"], "grid.breakpoints", false);
    }
  }
  for (const char* name : {"f", "g"}) {
    if (doc.contains(name)) {
      raw.functions.emplace_back(name, r.samples(doc[name], name));
    } else if (std::string(name) == "f") {
      r.fail("f", "missing field");
    }
  }
  for (const char* name : {"p", "q"}) {
    if (doc.contains(name)) {
      raw.exponents.emplace_back(name, r.numbers(doc[name], name, true));
    } else if (std::string(name) == "p") {
      r.fail("p", "missing field");
    }
  }
  if (doc.contains("params") && !doc["params"].is_object()) r.fail("params", "expected an object");
  if (!r.diagnostics.empty()) throw InvalidInput(r.diagnostics);

  const auto violations = validate(raw);
  if (!violations.empty()) throw InvalidInput(violations);

  const auto grid = raw.breakpoints.empty() ? MeasureGrid::from_measures(raw.measures)
                                            : MeasureGrid::from_breakpoints(raw.breakpoints);
  Problem out{grid, SampledFunction(grid, raw.functions.front().second), std::nullopt,
              ExponentField(grid, raw.exponents.front().second), std::nullopt};
  if (raw.functions.size() > 1) out.g = SampledFunction(grid, raw.functions[1].second);
  if (raw.exponents.size() > 1) out.q = ExponentField(grid, raw.exponents[1].second);
  if (doc.contains("params")) out.params = doc["params"];
  return out;
}

json problem_to_json(const Problem& problem) {
  json doc;
  doc["format"] = kProblemFormat;
  const auto& grid = *problem.grid;
  if (grid.has_geometry()) {
    doc["grid"]["breakpoints"] = std::vector<double>(grid.breakpoints().begin(), grid.breakpoints().end());
  } else {
    doc["grid"]["measures"] = std::vector<double>(grid.measures().begin(), grid.measures().end());
  }
  const auto samples = [](const SampledFunction& f) {
    json arr = json::array();
    for (const auto& v : f.values()) arr.push_back(sample_to_json(v));
    return arr;
  };
  const auto exponents = [](const ExponentField& e) {
    json arr = json::array();
    for (double v : e.values()) arr.push_back(exponent_to_json(v));
    return arr;
  };
  doc["f"] = samples(problem.f);
  if (problem.g) doc["g"] = samples(*problem.g);
  doc["p"] = exponents(problem.p);
  if (problem.q) doc["q"] = exponents(*problem.q);
  if (!problem.params.empty()) doc["params"] = problem.params;
  return doc;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput({{"file", "cannot open " + path, std::nullopt}});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput({{"file", std::string("malformed JSON: ") + e.what(), std::nullopt}});
  }
  return problem_from_json(doc);
}

void save_problem(const Problem& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << problem_to_json(problem).dump(2) << '\n';
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return os.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << str();
}

}  // namespace varnorm
