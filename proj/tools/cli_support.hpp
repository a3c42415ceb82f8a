#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "setopt/oracle.hpp"
#include "setopt/solver.hpp"

namespace setopt::cli {

using nlohmann::json;

struct Problem {
  int n;
  int m;
  ConeContext cone;
  SetMap map;
  Omega omega;
  Vec xbar;
  Tolerances tol;
  std::string hash;  // FNV-1a 64 of the raw file bytes, hex
};

/// Error carrying a JSON-pointer-like location in the problem file.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : Error(ErrorCode::SchemaError, path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string fnv1a_hex(std::string_view bytes);

/// Validates the document shape, then builds the cone, map, Omega and tolerances.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::string& path);

/// Applies an override block {"tau_eq", "tau_mem", "tau_act", "tau_stat"} to `base`.
Tolerances parse_tolerances(const json& j, Tolerances base, const std::string& path = "/tolerances");
Tolerances load_tolerances(const std::string& path, Tolerances base);

/// "1,2", "[1, 2]" or "3" into a vector of the given length.
Vec parse_vector(const std::string& text, Eigen::Index dim, const std::string& what);
std::vector<Vec> parse_points(const std::string& text, Eigen::Index dim, const std::string& what);

json to_json(const Vec& v);
json to_json(const Mat& m);
json to_json(const std::vector<Vec>& vs);
json to_json(const Tolerances& t);
json to_json(const NormalConeDescriptor& n);
json to_json(const EstimatePolytope& p);
json to_json(const MembershipCertificate& c);
json to_json(const StationarityCertificate& c, bool dump_polytopes);
json to_json(const VectorStationarity& v);
json to_json(const GridVerdict& v);
json to_json(const LipschitzReport& r);
json to_json(const InvarianceReport& r);
json to_json(const DescentTrace& t);
json to_json(const ScalarizationResult& r);
json error_json(const std::exception& e);

/// Common report header: command, problem hash and the full tolerance table.
json report(const std::string& command, const std::string& hash, const Tolerances& tol);

/// Golden two-branch example; one entry per asserted value.
struct DemoOutcome {
  json report;
  int mismatches = 0;
};
DemoOutcome run_demo();

/// The golden problem file text used by the demo.
std::string_view golden_problem_text();

}  // namespace setopt::cli
