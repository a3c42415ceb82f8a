#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli_support.hpp"

using namespace setopt;
using namespace setopt::cli;

namespace {

constexpr int kOk = 0;
constexpr int kError = 2;
constexpr int kNotStationary = 3;

struct Options {
  std::string problem;
  std::string tolerances;
};

Problem load(const Options& o) {
  Problem p = load_problem(o.problem);
  if (!o.tolerances.empty()) p.tol = load_tolerances(o.tolerances, p.tol);
  return p;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

SetRelation relation_of(const std::string& r) {
  if (r == "l" || r == "lower") return SetRelation::Lower;
  if (r == "u" || r == "upper") return SetRelation::Upper;
  throw Error(ErrorCode::InvalidArgument, "relation must be l or u");
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const DescentTrace& t) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << "k";
  for (Eigen::Index i = 0; i < t.x.size(); ++i) out << ",x" << i + 1;
  out << ",step,residual,merit,accepted\n";
  for (std::size_t k = 0; k < t.iterates.size(); ++k) {
    const IterateRecord& r = t.iterates[k];
    out << k;
    for (Eigen::Index i = 0; i < r.x.size(); ++i) out << "," << csv_number(r.x[i]);
    out << "," << csv_number(r.step) << "," << csv_number(r.residual) << ","
        << (r.merit ? csv_number(*r.merit) : "") << "," << (r.accepted ? 1 : 0) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set optimization: set relations, scalarization and stationarity certificates"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--tolerances", opt.tolerances, "JSON file overriding tau_eq/tau_mem/tau_act/tau_stat")
      ->check(CLI::ExistingFile);

  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--problem", opt.problem, "problem file")->required();
  };

  auto* validate = app.add_subcommand("validate", "check a problem file against the schema");
  add_problem(validate);

  std::string at, anchor, y_text, a_text, b_text, kind = "all";
  auto* eval = app.add_subcommand("eval", "evaluate F and its Jacobians");
  add_problem(eval);
  eval->add_option("--at", at, "point x (default xbar)");

  auto* relate = app.add_subcommand("relate", "set relations and scalar gaps between two point lists");
  add_problem(relate);
  relate->add_option("--a", a_text, "JSON point list A (default F(--at))");
  relate->add_option("--b", b_text, "JSON point list B (default F(xbar))");
  relate->add_option("--at", at, "point x");

  auto* minimals = app.add_subcommand("minimals", "extremal elements of F(x)");
  add_problem(minimals);
  minimals->add_option("--at", at, "point x (default xbar)");
  minimals->add_option("--kind", kind, "Min|WMin|Max|WMax|SMin|all");

  auto* scalarize = app.add_subcommand("scalarize", "psi and the scalarizing functionals");
  add_problem(scalarize);
  scalarize->add_option("--y", y_text, "evaluate psi and its subdifferential at y");
  scalarize->add_option("--at", at, "evaluate f_l and f_u at x");
  scalarize->add_option("--anchor", anchor, "anchor (default xbar)");

  std::string relation = "l", augment;
  double tol_stat = 0.0;
  bool dump = false;
  auto* stat = app.add_subcommand("stationarity", "certify stationarity (exit 3 when not stationary)");
  add_problem(stat);
  stat->add_option("--relation", relation, "l|u|vector");
  stat->add_option("--tol", tol_stat, "tau_stat override");
  stat->add_flag("--dump-polytopes", dump, "include G/H vertex lists");
  stat->add_option("--augment", augment, "shift k in K: add components f_i + k (l) or f_i - k (u)");
  stat->add_option("--at", at, "point (default xbar)");

  std::string check;
  double radius = 0.5, step = 1e-3;
  std::uint64_t seed = 0;
  int trials = 200, probes = 100, max_dim = 3;
  std::string k_text;
  auto* oracle = app.add_subcommand("oracle", "brute-force verification on grids and samples");
  add_problem(oracle);
  oracle->add_option("--check", check, "minimality|consistency|convexity|lipschitz|invariance")
      ->required()
      ->check(CLI::IsMember({"minimality", "consistency", "convexity", "lipschitz", "invariance"}));
  oracle->add_option("--relation", relation, "l|u|vector");
  oracle->add_option("--radius", radius, "neighbourhood radius");
  oracle->add_option("--step", step, "grid step");
  oracle->add_option("--seed", seed, "random seed");
  oracle->add_option("--trials", trials, "samples for convexity/lipschitz");
  oracle->add_option("--probes", probes, "probes for invariance");
  oracle->add_option("--k", k_text, "shift in K for invariance (default e)");
  oracle->add_option("--max-dim", max_dim, "grid dimension cap override");

  std::string x0_text, csv;
  DescentParams dp;
  auto* desc = app.add_subcommand("descend", "sampling descent toward a stationary point");
  add_problem(desc);
  desc->add_option("--x0", x0_text, "start (default xbar)");
  desc->add_option("--relation", relation, "l|u");
  desc->add_option("--seed", dp.seed, "random seed");
  desc->add_option("--max-iters", dp.max_iters, "iteration cap");
  desc->add_option("--step0", dp.step0, "initial step (default 0.1 (1 + |x0|))");
  desc->add_option("--directions", dp.directions_per_iter, "random directions per iteration");
  desc->add_option("--csv", csv, "also write the trace as CSV");

  auto* demo = app.add_subcommand("demo", "golden two-branch example with assertions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (demo->parsed()) {
      DemoOutcome d = run_demo();
      emit(d.report);
      return d.mismatches == 0 ? kOk : kError;
    }
    Problem p = load(opt);
    const Vec x = at.empty() ? p.xbar : parse_vector(at, p.n, "--at");

    if (validate->parsed()) {
      json j = report("validate", p.hash, p.tol);
      j["valid"] = true;
      j["n"] = p.n;
      j["m"] = p.m;
      j["components"] = p.map.size();
      j["omega"] = p.omega.kind == Omega::Kind::Free ? "free" : "box";
      emit(j);
      return kOk;
    }
    if (eval->parsed()) {
      const Image img = p.map.evaluate(x, p.tol.eq);
      json sources = json::array();
      for (const auto& s : img.sources) {
        json one = json::array();
        for (std::size_t i : s) one.push_back(i + 1);
        sources.push_back(one);
      }
      json jac = json::array();
      for (const Mat& m : p.map.jacobians(x)) jac.push_back(to_json(m));
      json j = report("eval", p.hash, p.tol);
      j["x"] = to_json(x);
      j["image"] = to_json(img.points.points());
      j["sources"] = sources;
      j["jacobians"] = jac;
      emit(j);
      return kOk;
    }
    if (relate->parsed()) {
      const PointSet a = PointSet::from_points(
          a_text.empty() ? p.map.evaluate(x, p.tol.eq).points.points() : parse_points(a_text, p.m, "--a"),
          p.tol.eq);
      const PointSet b = PointSet::from_points(
          b_text.empty() ? p.map.evaluate(p.xbar, p.tol.eq).points.points() : parse_points(b_text, p.m, "--b"),
          p.tol.eq);
      json j = report("relate", p.hash, p.tol);
      j["lower_less"] = lower_less(a, b, p.cone, false, p.tol.mem);
      j["upper_less"] = upper_less(a, b, p.cone, false, p.tol.mem);
      j["strict_lower"] = lower_less(a, b, p.cone, true, p.tol.mem);
      j["strict_upper"] = upper_less(a, b, p.cone, true, p.tol.mem);
      j["gap_l"] = scalar_gap(a, b, p.cone, SetRelation::Lower);
      j["gap_u"] = scalar_gap(a, b, p.cone, SetRelation::Upper);
      emit(j);
      return kOk;
    }
    if (minimals->parsed()) {
      const PointSet img = p.map.evaluate(x, p.tol.eq).points;
      json j = report("minimals", p.hash, p.tol);
      j["x"] = to_json(x);
      j["image"] = to_json(img.points());
      for (ElementKind k : {ElementKind::Min, ElementKind::WMin, ElementKind::Max, ElementKind::WMax,
                            ElementKind::SMin}) {
        const std::string name(to_string(k));
        if (kind == "all" || kind == name) j[name] = to_json(minimal_elements(img, p.cone, k, p.tol.mem));
      }
      if (kind != "all" && j.size() == 6) throw Error(ErrorCode::InvalidArgument, "unknown --kind " + kind);
      emit(j);
      return kOk;
    }
    if (scalarize->parsed()) {
      json j = report("scalarize", p.hash, p.tol);
      if (!y_text.empty()) {
        const Vec y = parse_vector(y_text, p.m, "--y");
        const SubdifferentialFace f = psi_subdifferential(p.cone, y, p.tol.act);
        j["y"] = to_json(y);
        j["psi"] = f.value;
        j["subdifferential_vertices"] = to_json(f.vertices);
      }
      if (!at.empty() || y_text.empty()) {
        const Vec xb = anchor.empty() ? p.xbar : parse_vector(anchor, p.n, "--anchor");
        j["x"] = to_json(x);
        j["anchor"] = to_json(xb);
        j["f_lower"] = to_json(f_lower(p.map, p.cone, xb, x, p.tol));
        j["f_upper"] = to_json(f_upper(p.map, p.cone, xb, x, p.tol));
      }
      emit(j);
      return kOk;
    }
    if (stat->parsed()) {
      if (tol_stat > 0.0) p.tol.stat = tol_stat;
      json j = report("stationarity", p.hash, p.tol);
      j["x"] = to_json(x);
      if (relation == "vector" || relation == "v") {
        const VectorStationarity v = vector_stationarity(p.map, p.cone, x, p.tol);
        j["certificate"] = to_json(v);
        emit(j);
        return v.stationary ? kOk : kNotStationary;
      }
      const SetRelation r = relation_of(relation);
      SetMap map = p.map;
      if (!augment.empty()) {
        const Vec k = parse_vector(augment, p.m, "--augment");
        if (p.cone.classify(k, p.tol.mem) == Membership::Outside) {
          throw Error(ErrorCode::InvalidArgument, "--augment shift must lie in K");
        }
        map = p.map.augmented(k, r == SetRelation::Lower ? 1.0 : -1.0);
        j["augment"] = to_json(k);
      }
      const StationarityCertificate c = stationarity(map, p.cone, x, p.omega, r, p.tol);
      j["certificate"] = to_json(c, dump);
      emit(j);
      return c.stationary ? kOk : kNotStationary;
    }
    if (oracle->parsed()) {
      json j = report("oracle", p.hash, p.tol);
      const GridOptions grid{radius, step, max_dim};
      if (check == "minimality") {
        const MinimalityNotion notion = relation == "vector" || relation == "v"
                                            ? MinimalityNotion::VectorWeak
                                            : (relation_of(relation) == SetRelation::Lower ? MinimalityNotion::Lower
                                                                                           : MinimalityNotion::Upper);
        const GridVerdict v = local_weak_minimality_grid(p.map, p.cone, p.xbar, p.omega, notion, grid, p.tol);
        j["verdict"] = to_json(v);
        if (v.counterexample) {
          j["verdict"]["replayed"] = replay_counterexample(p.map, p.cone, p.xbar, notion, *v.counterexample, p.tol);
        }
      } else if (check == "consistency") {
        j["verdict"] = to_json(
            scalarization_consistency(p.map, p.cone, p.xbar, p.omega, relation_of(relation), grid, p.tol));
      } else if (check == "convexity") {
        j["verdict"] = to_json(sample_convexity(p.map, p.cone, p.xbar, radius, trials, seed, p.tol));
      } else if (check == "lipschitz") {
        j["verdict"] = to_json(sample_lipschitz_bound(p.map, p.cone, p.xbar, radius, trials, seed, p.tol));
      } else {
        const Vec k = k_text.empty() ? p.cone.e() : parse_vector(k_text, p.m, "--k");
        j["verdict"] = to_json(invariance_check(p.map, p.cone, p.xbar, k, probes, seed, radius, p.tol));
      }
      emit(j);
      return kOk;
    }
    if (desc->parsed()) {
      const Vec x0 = x0_text.empty() ? p.xbar : parse_vector(x0_text, p.n, "--x0");
      const DescentTrace t = descend(p.map, p.cone, x0, p.omega, relation_of(relation), dp, p.tol);
      if (!csv.empty()) write_csv(csv, t);
      json j = report("descend", p.hash, p.tol);
      j["seed"] = dp.seed;
      j["trace"] = to_json(t);
      emit(j);
      return kOk;
    }
  } catch (const std::exception& e) {
    emit(error_json(e));
    return kError;
  }
  return kError;
}
