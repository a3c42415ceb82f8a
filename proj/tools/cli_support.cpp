#include "cli_support.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace setopt::cli {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", what + " is not valid JSON (" + std::string(e.what()) + ")");
  }
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw SchemaError(path + "/" + key, "unknown key");
  }
}

int positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw SchemaError(path, "expected an integer >= 1");
  }
  return j.get<int>();
}

Vec number_array(const json& j, const std::string& path, std::optional<Eigen::Index> len) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  if (len && static_cast<Eigen::Index>(j.size()) != *len) {
    throw SchemaError(path, "expected " + std::to_string(*len) + " entries, got " +
                                std::to_string(j.size()));
  }
  if (j.empty()) throw SchemaError(path, "expected a nonempty array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(path + "/" + std::to_string(i), "expected a number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

const json& required(const json& j, const std::string& key) {
  if (!j.contains(key)) throw SchemaError("/" + key, "missing required key");
  return j.at(key);
}

}  // namespace

Tolerances parse_tolerances(const json& j, Tolerances base, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  only_keys(j, {"tau_eq", "tau_mem", "tau_act", "tau_stat"}, path);
  auto take = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number() || !(v.get<double>() > 0.0)) {
      throw SchemaError(path + "/" + key, "expected a positive number");
    }
    slot = v.get<double>();
  };
  take("tau_eq", base.eq);
  take("tau_mem", base.mem);
  take("tau_act", base.act);
  take("tau_stat", base.stat);
  return base;
}

Tolerances load_tolerances(const std::string& path, Tolerances base) {
  return parse_tolerances(parse_json(read_file(path), "tolerance file"), base, "");
}

Problem parse_problem(std::string_view text) {
  const json j = parse_json(text, "problem file");
  if (!j.is_object()) throw SchemaError("/", "expected an object");
  only_keys(j, {"n", "m", "cone", "dim", "e", "components", "omega", "xbar", "tolerances", "labels"},
            "");
  const int n = positive_int(required(j, "n"), "/n");
  const int m = positive_int(required(j, "m"), "/m");

  const Tolerances tol =
      j.contains("tolerances") ? parse_tolerances(j.at("tolerances"), Tolerances{}) : Tolerances{};

  // Cone: "orthant" shorthand (with optional dim and e) or explicit dual generators.
  const json& cone = required(j, "cone");
  std::vector<Vec> dual;
  Vec e;
  if (cone.is_string()) {
    if (cone.get<std::string>() != "orthant") throw SchemaError("/cone", "unknown cone name");
    if (j.contains("dim") && positive_int(j.at("dim"), "/dim") != m) {
      throw SchemaError("/dim", "orthant dimension must equal m");
    }
    for (int i = 0; i < m; ++i) dual.push_back(Vec::Unit(m, i));
    e = j.contains("e") ? number_array(j.at("e"), "/e", m) : Vec::Ones(m);
  } else if (cone.is_object()) {
    only_keys(cone, {"dual_generators", "e"}, "/cone");
    if (j.contains("dim") || j.contains("e")) {
      throw SchemaError(j.contains("dim") ? "/dim" : "/e", "only allowed with the orthant shorthand");
    }
    if (!cone.contains("dual_generators")) throw SchemaError("/cone/dual_generators", "missing");
    const json& gens = cone.at("dual_generators");
    if (!gens.is_array() || gens.empty()) {
      throw SchemaError("/cone/dual_generators", "expected a nonempty array");
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      dual.push_back(number_array(gens[i], "/cone/dual_generators/" + std::to_string(i), m));
    }
    if (!cone.contains("e")) throw SchemaError("/cone/e", "missing");
    e = number_array(cone.at("e"), "/cone/e", m);
  } else {
    throw SchemaError("/cone", "expected \"orthant\" or an object");
  }
  ConeContext ctx = ConeContext::build(dual, e, tol.eq);

  const json& comps = required(j, "components");
  if (!comps.is_array() || comps.empty()) {
    throw SchemaError("/components", "expected a nonempty array");
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string p = "/components/" + std::to_string(i);
    if (!comps[i].is_array() || static_cast<int>(comps[i].size()) != m) {
      throw SchemaError(p, "expected an array of " + std::to_string(m) + " expression strings");
    }
    std::vector<std::string> row;
    for (std::size_t r = 0; r < comps[i].size(); ++r) {
      if (!comps[i][r].is_string()) throw SchemaError(p + "/" + std::to_string(r), "expected a string");
      row.push_back(comps[i][r].get<std::string>());
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& l = j.at("labels");
    if (!l.is_array() || l.size() != comps.size()) {
      throw SchemaError("/labels", "expected one string per component");
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) throw SchemaError("/labels/" + std::to_string(i), "expected a string");
      labels.push_back(l[i].get<std::string>());
    }
  }
  SetMap parsed = SetMap::from_strings(n, m, rows);
  SetMap map(n, m, parsed.components(), labels);

  Omega omega = Omega::free(n);
  if (j.contains("omega")) {
    const json& o = j.at("omega");
    if (!o.is_object() || !o.contains("type") || !o.at("type").is_string()) {
      throw SchemaError("/omega", "expected an object with a string \"type\"");
    }
    const std::string type = o.at("type").get<std::string>();
    if (type == "free") {
      only_keys(o, {"type"}, "/omega");
    } else if (type == "box") {
      only_keys(o, {"type", "lower", "upper"}, "/omega");
      if (!o.contains("lower") || !o.contains("upper")) {
        throw SchemaError("/omega", "box needs lower and upper");
      }
      const Vec lo = number_array(o.at("lower"), "/omega/lower", n);
      const Vec hi = number_array(o.at("upper"), "/omega/upper", n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (lo[i] > hi[i]) throw SchemaError("/omega", "lower exceeds upper");
      }
      omega = Omega::box(lo, hi);
    } else {
      throw SchemaError("/omega/type", "expected \"free\" or \"box\"");
    }
  }
  Vec xbar = j.contains("xbar") ? number_array(j.at("xbar"), "/xbar", n) : Vec::Zero(n);

  return Problem{n, m, std::move(ctx), std::move(map), std::move(omega), std::move(xbar), tol,
                 fnv1a_hex(text)};
}

Problem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

Vec parse_vector(const std::string& text, Eigen::Index dim, const std::string& what) {
  std::vector<double> vals;
  try {
    if (!text.empty() && text.front() == '[') {
      const json j = json::parse(text);
      for (const json& v : j) vals.push_back(v.get<double>());
    } else {
      std::stringstream ss(text);
      std::string tok;
      while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    }
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse " + what + " from '" + text + "'");
  }
  if (static_cast<Eigen::Index>(vals.size()) != dim) {
    throw Error(ErrorCode::DimensionMismatch, what + " needs " + std::to_string(dim) + " entries");
  }
  return Eigen::Map<const Vec>(vals.data(), dim);
}

std::vector<Vec> parse_points(const std::string& text, Eigen::Index dim, const std::string& what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::InvalidArgument, what + " must be a JSON array of points");
  }
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidArgument, what + " must be nonempty");
  std::vector<Vec> out;
  for (const json& p : j) out.push_back(parse_vector(p.dump(), dim, what + " point"));
  return out;
}

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vec(m.row(r).transpose())));
  return a;
}

json to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const Vec& v : vs) a.push_back(to_json(v));
  return a;
}

json to_json(const Tolerances& t) {
  return {{"tau_eq", t.eq}, {"tau_mem", t.mem}, {"tau_act", t.act}, {"tau_stat", t.stat}};
}

json to_json(const NormalConeDescriptor& n) {
  if (n.kind == NormalConeDescriptor::Kind::FullSpace) return {{"kind", "FullSpace"}, {"dim", n.dim}};
  json flags = json::array();
  for (BoxFlag f : n.flags) flags.push_back(std::string(to_string(f)));
  return {{"kind", "BoxPattern"}, {"flags", flags}};
}

json to_json(const EstimatePolytope& p) {
  json prov = json::array();
  for (const Provenance& q : p.provenance) prov.push_back({{"zbar", q.zbar}, {"generator", q.generator}});
  return {{"vertices", to_json(p.vertices)}, {"provenance", prov}};
}

json to_json(const MembershipCertificate& c) {
  json j = {{"decision", c.decision},       {"residual", c.residual},
            {"coefficients", to_json(c.coefficients)}, {"normal_part", to_json(c.normal_part)},
            {"marginal", c.marginal},       {"tau_stat", c.tau_stat}};
  if (!c.decision) j["separating_direction"] = to_json(c.separating_direction);
  return j;
}

json to_json(const StationarityCertificate& c, bool dump_polytopes) {
  json anchors = json::array();
  const bool lower = c.relation == StationarityKind::Lower;
  for (const AnchorRecord& a : c.per_anchor) {
    json r = {{"anchor", a.anchor},
              {"component", a.component + 1},
              {"point", to_json(a.point)},
              {lower ? "A" : "B", to_json(a.selection)}};
    if (dump_polytopes) r[lower ? "G" : "H"] = to_json(a.estimate);
    anchors.push_back(r);
  }
  return {{"relation", std::string(to_string(c.relation))},
          {"stationary", c.stationary},
          {"residual", c.residual},
          {"per_anchor", anchors},
          {"membership", to_json(c.membership)},
          {"omega_normal", to_json(c.omega_normal)}};
}

json to_json(const VectorStationarity& v) {
  json j = {{"relation", "vector"},
            {"stationary", v.stationary},
            {"residual", v.residual},
            {"component_residuals", v.component_residuals}};
  if (v.component) {
    j["component"] = *v.component + 1;
    j["witness"] = to_json(v.witness);
  }
  return j;
}

json to_json(const GridVerdict& v) {
  json j = {{"property", std::string(to_string(v.property))},
            {"holds", v.holds},
            {"center", to_json(v.center)},
            {"radius", v.radius},
            {"samples_checked", v.samples_checked}};
  if (v.notion) j["relation"] = std::string(to_string(*v.notion));
  if (v.step > 0.0) {
    j["step"] = v.step;
    j["caveat"] = std::string(kGridCaveat);
  }
  if (v.hypothesis_verified) j["hypothesis_verified"] = *v.hypothesis_verified;
  if (v.counterexample) {
    j["counterexample"] = {{"xs", to_json(v.counterexample->xs)},
                           {"evidence", v.counterexample->evidence},
                           {"value", v.counterexample->value}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

json to_json(const LipschitzReport& r) {
  return {{"property", "lipschitz"},         {"holds", r.holds},
          {"quotient_max", r.quotient_max},  {"lipschitz_estimate", r.lipschitz_estimate},
          {"rho", r.rho},                    {"bound", r.bound},
          {"trials", r.trials}};
}

json to_json(const InvarianceReport& r) {
  return {{"property", "invariance"}, {"holds", r.holds}, {"max_deviation", r.max_deviation},
          {"probes", r.probes}};
}

json to_json(const DescentTrace& t) {
  json its = json::array();
  for (std::size_t k = 0; k < t.iterates.size(); ++k) {
    const IterateRecord& r = t.iterates[k];
    its.push_back({{"k", k},
                   {"x", to_json(r.x)},
                   {"step", r.step},
                   {"residual", r.residual},
                   {"merit", r.merit ? json(*r.merit) : json(nullptr)},
                   {"accepted", r.accepted}});
  }
  json j = {{"termination", std::string(to_string(t.termination))},
            {"x", to_json(t.x)},
            {"iterates", its}};
  j["final_certificate"] = t.final_certificate ? to_json(*t.final_certificate, false) : json(nullptr);
  return j;
}

json to_json(const ScalarizationResult& r) {
  json inner = json::array();
  for (const auto& w : r.inner_witnesses) inner.push_back(w);
  return {{"value", r.value},
          {"outer_witnesses", r.outer_witnesses},
          {"inner_witnesses", inner},
          {"anchor_image", to_json(r.anchor_image.points.points())},
          {"image", to_json(r.image.points.points())}};
}

json error_json(const std::exception& e) {
  json err = {{"message", e.what()}};
  if (const auto* se = dynamic_cast<const SchemaError*>(&e)) {
    err["code"] = "SchemaError";
    err["path"] = se->path();
  } else if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["code"] = std::string(to_string(pe->code()));
    err["offset"] = pe->offset();
  } else if (const auto* ee = dynamic_cast<const Error*>(&e)) {
    err["code"] = std::string(to_string(ee->code()));
  } else {
    err["code"] = "InvalidArgument";
  }
  return {{"error", err}};
}

json report(const std::string& command, const std::string& hash, const Tolerances& tol) {
  return {{"command", command}, {"problem_hash", hash}, {"tolerances", to_json(tol)}};
}

}  // namespace setopt::cli
