#include "doctest.h"
#include "varnorm/problem_io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>

using namespace varnorm;
using nlohmann::json;

namespace {

std::vector<Diagnostic> diagnostics_of(const json& doc) {
  try {
    problem_from_json(doc);
  } catch (const InvalidInput& e) {
    return e.diagnostics();
  }
  return {};
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("loads the golden-ratio problem") {
  const auto doc = json::parse(R"({"format": 1, "grid": {"measures": [1, 1]}, "f": [1, 1], "p": [1, 2]})");
  const auto pr = problem_from_json(doc);
  CHECK(pr.grid->size() == 2);
  CHECK(pr.p[1] == 2.0);
  CHECK_FALSE(pr.g.has_value());
  CHECK_FALSE(pr.q.has_value());
}

TEST_CASE("reads complex samples, infinite exponents and parameters") {
  const auto doc = json::parse(R"({"format": 1, "grid": {"breakpoints": [0, 0.5, 2]},
      "f": [[3, 4], -1], "g": [0, 2], "p": ["inf", 1.5], "q": [2, "inf"], "params": {"theta": 0.5}})");
  const auto pr = problem_from_json(doc);
  CHECK(pr.f.abs(0) == doctest::Approx(5.0));
  CHECK(pr.p[0] == kInf);
  CHECK(pr.q->is_infinite(1));
  CHECK(pr.grid->measure(1) == doctest::Approx(1.5));
  CHECK(pr.params["theta"].get<double>() == 0.5);
}

TEST_CASE("round trip is bit-identical") {
  const auto doc = json::parse(R"({"format": 1, "grid": {"breakpoints": [0, 0.1, 0.30000000000000004, 1]},
      "f": [[0.1, -0.0], 1e-300, 2.5], "p": [0.7, "inf", 3.3333333333333335], "q": [1, 2, 3]})");
  const auto a = problem_from_json(doc);
  const auto path = (std::filesystem::temp_directory_path() / "varnorm_roundtrip.json").string();
  save_problem(a, path);
  const auto b = load_problem(path);
  std::remove(path.c_str());
  REQUIRE(*a.grid == *b.grid);
  for (std::size_t c = 0; c < a.f.size(); ++c) {
    CHECK(bit_equal(a.f.value(c).real(), b.f.value(c).real()));
    CHECK(bit_equal(a.f.value(c).imag(), b.f.value(c).imag()));
    CHECK(bit_equal(a.p[c], b.p[c]));
    CHECK(bit_equal((*a.q)[c], (*b.q)[c]));
  }
}

TEST_CASE("collects every structural problem") {
  const auto ds = diagnostics_of(json::parse(R"({"format": 2, "grid": {}, "p": [1, "x"]})"));
  CHECK(ds.size() >= 4);  // format, grid, f missing, p[1]
}

TEST_CASE("reports invariant violations per cell") {
  const auto ds = diagnostics_of(json::parse(R"({"format": 1, "grid": {"measures": [1, -1, 1]},
      "f": [1, 1, 1], "p": [1, 0, 2]})"));
  REQUIRE(ds.size() >= 2);
  bool measure_cell = false;
  for (const auto& d : ds) measure_cell |= d.object == "grid" && d.cell == std::optional<std::size_t>(1);
  CHECK(measure_cell);
}

TEST_CASE("length mismatch is rejected") {
  CHECK_FALSE(diagnostics_of(json::parse(R"({"format": 1, "grid": {"measures": [1, 1]}, "f": [1], "p": [1, 1]})"))
                  .empty());
}

TEST_CASE("malformed file") {
  const auto path = (std::filesystem::temp_directory_path() / "varnorm_bad.json").string();
  {
    std::FILE* out = std::fopen(path.c_str(), "w");
    std::fputs("{ not json", out);
    std::fclose(out);
  }
  CHECK_THROWS_AS(load_problem(path), InvalidInput);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_problem("/nonexistent/varnorm.json"), InvalidInput);
}

TEST_CASE("number formatting is fixed") {
  CHECK(format_number(1.0) == "1.00000000000e+00");
  CHECK(format_number(-0.000125) == "-1.25000000000e-04");
  CHECK(format_number(kInf) == "inf");
}

TEST_CASE("csv table") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  CHECK(t.str() == "a,b\n1,2\n");
  CHECK_THROWS(t.add_row({"1"}));
}
