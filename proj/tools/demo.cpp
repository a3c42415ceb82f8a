#include <cmath>

#include "cli_support.hpp"

namespace setopt::cli {

namespace {

constexpr std::string_view kGolden = R"json({
  "n": 1,
  "m": 2,
  "cone": "orthant",
  "dim": 2,
  "e": [1, 1],
  "components": [["x1 + 1", "x1 - 1"], ["-(x1 + 1)", "-(x1 - 1)"]],
  "omega": {"type": "free"},
  "xbar": [0],
  "labels": ["f", "-f"]
}
)json";

bool same_set(const std::vector<Vec>& a, const std::vector<Vec>& b, double tol = 1e-12) {
  auto covered = [tol](const std::vector<Vec>& from, const std::vector<Vec>& to) {
    for (const Vec& p : from) {
      bool hit = false;
      for (const Vec& q : to) hit = hit || (p.size() == q.size() && (p - q).norm() <= tol);
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

std::vector<Vec> pts(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Vec> out;
  for (const auto& r : rows) {
    Vec v(static_cast<Eigen::Index>(r.size()));
    Eigen::Index i = 0;
    for (double x : r) v[i++] = x;
    out.push_back(v);
  }
  return out;
}

struct Checker {
  json checks = json::array();
  int mismatches = 0;

  void operator()(const std::string& name, bool pass, json expected, json actual) {
    if (!pass) ++mismatches;
    checks.push_back({{"name", name}, {"pass", pass}, {"expected", expected}, {"actual", actual}});
  }
};

}  // namespace

std::string_view golden_problem_text() { return kGolden; }

DemoOutcome run_demo() {
  const Problem p = parse_problem(kGolden);
  const Tolerances& tol = p.tol;
  const ConeContext& ctx = p.cone;
  const SetMap& map = p.map;
  const Vec x0 = p.xbar;
  Checker check;

  const auto e2 = pts({{1, 0}, {0, 1}});
  check("cone normalized generators", same_set(ctx.normalized_generators(), e2), to_json(e2),
        to_json(ctx.normalized_generators()));

  const double t = psi(ctx, 3.5 * ctx.e());
  check("psi(3.5 e) = 3.5", std::abs(t - 3.5) <= 1e-12, 3.5, t);

  const SubdifferentialFace face = psi_subdifferential(ctx, Vec::Zero(2), tol.act);
  check("subdifferential of psi at 0", same_set(face.vertices, e2), to_json(e2), to_json(face.vertices));

  const Expression ex = Expression::parse("x1 + 1", 1);
  const bool ast = ex.structurally_equal(Expression::variable(0, 1) + Expression::constant(1.0, 1));
  check("parse x1 + 1 as add(var 0, const 1)", ast, "add(var 0, const 1)", ex.print());
  const ValueGradient vg = ex.eval_with_gradient(x0);
  check("x1 + 1 at 0 has value 1 and gradient [1]",
        vg.value == 1.0 && vg.gradient.size() == 1 && vg.gradient[0] == 1.0, json::array({1, {1}}),
        json::array({vg.value, to_json(vg.gradient)}));

  const Image img = map.evaluate(x0, tol.eq);
  const auto f0 = pts({{1, -1}, {-1, 1}});
  const bool prov = img.sources.size() == 2 && img.sources[0] == std::vector<std::size_t>{0} &&
                    img.sources[1] == std::vector<std::size_t>{1};
  check("F(0) with provenance", same_set(img.points.points(), f0) && prov, to_json(f0),
        to_json(img.points.points()));

  const Mat j1 = map.component_jacobian(0, x0);
  const Mat j2 = map.component_jacobian(1, x0);
  check("Jacobian of f at 0", j1.isApprox(Mat::Ones(2, 1)), to_json(Mat(Mat::Ones(2, 1))), to_json(j1));
  check("Jacobian of -f at 0", j2.isApprox(-Mat::Ones(2, 1)), to_json(Mat(-Mat::Ones(2, 1))),
        to_json(j2));

  const auto wmin = minimal_elements(img.points, ctx, ElementKind::WMin, tol.mem);
  const auto wmax = minimal_elements(img.points, ctx, ElementKind::WMax, tol.mem);
  check("WMin(F(0)) = F(0)", same_set(wmin, f0), to_json(f0), to_json(wmin));
  check("WMax(F(0)) = F(0)", same_set(wmax, f0), to_json(f0), to_json(wmax));
  check("zero-level WMin agrees with the definition", wmin_cross_check(img.points, ctx, tol), true,
        wmin_cross_check(img.points, ctx, tol));

  const ScalarizationResult fl = f_lower(map, ctx, x0, x0, tol);
  const ScalarizationResult fu = f_upper(map, ctx, x0, x0, tol);
  check("f_l(0) = 0 with both anchors as witnesses", fl.value == 0.0 && fl.outer_witnesses.size() == 2,
        0.0, fl.value);
  check("f_u(0) = 0 with both points as witnesses", fu.value == 0.0 && fu.outer_witnesses.size() == 2,
        0.0, fu.value);

  const SetMap constant = SetMap::from_strings(1, 2, {{"1", "-1"}, {"-1", "1"}});
  const double gu = g_upper(constant, ctx, x0, f0[0], tol).value;
  check("g_u of a WMax point under a constant map is 0", gu == 0.0, 0.0, gu);

  const Vec zs = (Vec(2) << 0.3, 0.7).finished();
  const Vec c1 = coderivative(map, x0, f0[0], zs, tol.eq);
  const Vec c2 = coderivative(map, x0, f0[1], zs, tol.eq);
  check("coderivative at f(0) is z1 + z2", std::abs(c1[0] - 1.0) <= 1e-12, 1.0, c1[0]);
  check("coderivative at -f(0) is -(z1 + z2)", std::abs(c2[0] + 1.0) <= 1e-12, -1.0, c2[0]);

  const NormalConeDescriptor nf = normal_cone_finite(img.points, f0[0], tol.eq);
  const NormalConeDescriptor nf2 = normal_cone_finite(img.points, f0[1], tol.eq);
  check("N(f(0), F(0)) and N(-f(0), F(0)) are the full plane",
        nf.kind == NormalConeDescriptor::Kind::FullSpace && nf2.kind == NormalConeDescriptor::Kind::FullSpace &&
            nf.dim == 2,
        to_json(NormalConeDescriptor::full_space(2)), to_json(nf));

  const GAssembly g1 = assemble_G(map, ctx, x0, f0[0], tol);
  const GAssembly g2 = assemble_G(map, ctx, x0, f0[1], tol);
  const auto g1_expected = pts({{1, -1, 0}, {1, 0, -1}});
  check("G at f(0) is {1} x (-subdifferential at 0)", same_set(g1.g.vertices, g1_expected),
        to_json(g1_expected), to_json(g1.g.vertices));
  const std::vector<Eigen::Index> first{0};
  const auto a1 = project(g1.g.vertices, first);
  check("A1 = {1}", same_set(a1, pts({{1}})) && same_set(g1.a.vertices, pts({{1}})), json::array({1}),
        to_json(a1));
  check("A2 = {-1}", same_set(g2.a.vertices, pts({{-1}})), json::array({-1}), to_json(g2.a.vertices));

  const HAssembly h1 = assemble_H_and_B(map, ctx, x0, f0[0], tol);
  const HAssembly h2 = assemble_H_and_B(map, ctx, x0, f0[1], tol);
  const auto minus_face = pts({{-1, 0}, {0, -1}});
  check("H at f(0) is -(subdifferential at 0)", same_set(h1.h.vertices, minus_face), to_json(minus_face),
        to_json(h1.h.vertices));
  auto image = linear_image(minus_face, Mat::Ones(1, 2));
  for (Vec& v : image) v = -v;
  check("B1 = {1}", same_set(h1.b.vertices, pts({{1}})) && same_set(image, pts({{1}})), json::array({1}),
        to_json(h1.b.vertices));
  check("B2 = {-1}", same_set(h2.b.vertices, pts({{-1}})), json::array({-1}), to_json(h2.b.vertices));

  const auto pm = pts({{1}, {-1}});
  const MinNormResult mn = min_norm_point(pm);
  check("min-norm point of [-1, 1] is 0", mn.distance <= 1e-12, 0.0, mn.distance);
  const MembershipCertificate mc = contains_zero(pm, NormalConeDescriptor::zero(1), tol.stat);
  check("0 in conv{1, -1} with weights (1/2, 1/2)",
        mc.decision && mc.residual <= 1e-12 && std::abs(mc.coefficients[0] - 0.5) <= 1e-12,
        json::array({0.5, 0.5}), to_json(mc.coefficients));

  const StationarityCertificate lo = lower_stationarity(map, ctx, x0, p.omega, tol);
  const StationarityCertificate up = upper_stationarity(map, ctx, x0, p.omega, tol);
  check("lower stationary with residual 0", lo.stationary && lo.residual <= 1e-12, 0.0, lo.residual);
  check("union of A sets is {1, -1}", same_set(lo.union_vertices, pm), to_json(pm), to_json(lo.union_vertices));
  check("upper stationary with residual 0", up.stationary && up.residual <= 1e-12, 0.0, up.residual);
  check("union of B sets is {1, -1}", same_set(up.union_vertices, pm), to_json(pm), to_json(up.union_vertices));

  const VectorStationarity vs = vector_stationarity(map, ctx, x0, tol);
  check("not stationary in the vector sense", !vs.stationary, false, vs.stationary);

  const GridOptions grid{0.5, 1e-3, 3};
  const GridVerdict gl = local_weak_minimality_grid(map, ctx, x0, p.omega, MinimalityNotion::Lower, grid, tol);
  const GridVerdict gu2 = local_weak_minimality_grid(map, ctx, x0, p.omega, MinimalityNotion::Upper, grid, tol);
  const GridVerdict gv =
      local_weak_minimality_grid(map, ctx, x0, p.omega, MinimalityNotion::VectorWeak, grid, tol);
  check("grid: locally lower weakly minimal", gl.holds, true, gl.holds);
  check("grid: locally upper weakly minimal", gu2.holds, true, gu2.holds);
  const bool replayed =
      gv.counterexample && replay_counterexample(map, ctx, x0, MinimalityNotion::VectorWeak, *gv.counterexample, tol);
  check("grid: not locally weakly minimal in the vector sense, counterexample replays", !gv.holds && replayed,
        false, gv.holds);

  const GridVerdict cl = scalarization_consistency(map, ctx, x0, p.omega, SetRelation::Lower, grid, tol);
  const GridVerdict cu = scalarization_consistency(map, ctx, x0, p.omega, SetRelation::Upper, grid, tol);
  check("scalarization consistent with the lower relation", cl.holds, true, cl.holds);
  check("scalarization consistent with the upper relation", cu.holds, true, cu.holds);

  const DescentTrace tr = descend(map, ctx, x0, p.omega, SetRelation::Lower, {}, tol);
  check("descent from 0 stops at once with ResidualBelowTol",
        tr.termination == Termination::ResidualBelowTol && tr.iterates.size() == 1, "ResidualBelowTol",
        std::string(to_string(tr.termination)));

  DemoOutcome out;
  out.mismatches = check.mismatches;
  out.report = report("demo", p.hash, tol);
  out.report["certificates"] = {{"lower_stationary", lo.stationary},
                                {"upper_stationary", up.stationary},
                                {"vector_stationary", vs.stationary},
                                {"grid_lower_minimal", gl.holds},
                                {"grid_upper_minimal", gu2.holds},
                                {"grid_vector_weak_minimal", gv.holds}};
  out.report["vector_weak_counterexample"] = to_json(gv)["counterexample"];
  out.report["checks"] = check.checks;
  out.report["mismatches"] = check.mismatches;
  return out;
}

}  // namespace setopt::cli
