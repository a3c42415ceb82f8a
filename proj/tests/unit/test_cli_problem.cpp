#include <string>

#include "cli_support.hpp"
#include "helpers.hpp"

using namespace setopt;
using setopt::cli::json;

namespace {
json base() {
  return json::parse(R"({"n": 1, "m": 2, "cone": "orthant", "dim": 2,
                         "components": [["x1", "x1"]], "xbar": [0]})");
}

std::string schema_path(const json& doc) {
  try {
    cli::parse_problem(doc.dump());
  } catch (const cli::SchemaError& e) {
    return e.path();
  }
  return "";
}
}  // namespace

TEST_CASE("golden problem parses") {
  const cli::Problem p = cli::parse_problem(cli::golden_problem_text());
  CHECK(p.n == 1);
  CHECK(p.m == 2);
  CHECK(p.map.size() == 2);
  CHECK(p.omega.kind == Omega::Kind::Free);
  CHECK(p.hash == cli::fnv1a_hex(cli::golden_problem_text()));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(cli::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(cli::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("schema errors carry a path") {
  json j = base();
  j["extra"] = 1;
  CHECK(schema_path(j) == "/extra");

  j = base();
  j.erase("components");
  CHECK(schema_path(j) == "/components");

  j = base();
  j["xbar"] = json::array({0, 1});
  CHECK(schema_path(j) == "/xbar");

  j = base();
  j["components"][0] = json::array({"x1"});
  CHECK(schema_path(j) == "/components/0");

  j = base();
  j["dim"] = 3;
  CHECK(schema_path(j) == "/dim");

  j = base();
  j["omega"] = {{"type", "box"}, {"lower", {1}}, {"upper", {0}}};
  CHECK(schema_path(j) == "/omega");

  j = base();
  j["tolerances"] = {{"tau_stat", -1}};
  CHECK(schema_path(j) == "/tolerances/tau_stat");

  CHECK(schema_path(json::array()) == "/");
}

TEST_CASE("semantic errors surface from the library") {
  json j = base();
  j["components"][0] = json::array({"x1 + ", "x1"});
  CHECK_ERROR(cli::parse_problem(j.dump()), ErrorCode::SyntaxError);
  j = base();
  j["cone"] = {{"dual_generators", {{1, 0}, {0, 1}}}, {"e", {1, -1}}};
  j.erase("dim");
  CHECK_ERROR(cli::parse_problem(j.dump()), ErrorCode::EnotInterior);
  CHECK_ERROR(cli::parse_problem("{not json"), ErrorCode::SchemaError);
}

TEST_CASE("vector arguments") {
  CHECK(cli::parse_vector("1,2", 2, "--at") == vec({1, 2}));
  CHECK(cli::parse_vector("[1, -2.5]", 2, "--at") == vec({1, -2.5}));
  CHECK_ERROR(cli::parse_vector("1,2,3", 2, "--at"), ErrorCode::DimensionMismatch);
}

TEST_CASE("demo reproduces every asserted value") {
  const cli::DemoOutcome d = cli::run_demo();
  CHECK(d.mismatches == 0);
  CHECK(d.report["checks"].size() >= 30);
}
