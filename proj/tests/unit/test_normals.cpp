#include "helpers.hpp"
#include "oracles.hpp"
#include "setopt/hull.hpp"
#include "setopt/normals.hpp"

using namespace setopt;

namespace {
SetMap two_branch() {
  return SetMap::from_strings(1, 2, {{"x1 + 1", "x1 - 1"}, {"-(x1 + 1)", "-(x1 - 1)"}});
}

std::vector<BoxFlag> flags(const NormalConeDescriptor& d) { return d.flags; }
}  // namespace

TEST_CASE("box normal cones") {
  CHECK(flags(normal_cone_box(vec({0}), vec({1}), vec({0}))) == std::vector{BoxFlag::NonPos});
  CHECK(flags(normal_cone_box(vec({0}), vec({1}), vec({1}))) == std::vector{BoxFlag::NonNeg});
  CHECK(normal_cone_box(vec({0, 0}), vec({1, 1}), vec({0.5, 0.2})).is_zero());
  CHECK(flags(normal_cone_box(vec({2}), vec({2}), vec({2}))) == std::vector{BoxFlag::All});
  CHECK(flags(normal_cone_box(vec({0, -1}), vec({1, 1}), vec({1, 0}))) ==
        std::vector{BoxFlag::NonNeg, BoxFlag::Zero});
  CHECK_ERROR(normal_cone_box(vec({0}), vec({1}), vec({1.5})), ErrorCode::PointNotInSet);
  CHECK(Omega::free(3).normal_cone(vec({7, -2, 1}), 1e-9).is_zero());
  CHECK(Omega::box(vec({0}), vec({1})).project(vec({3}))[0] == 1.0);
}

TEST_CASE("box normal cone matches the variational inequality at the endpoints") {
  // x* is normal at x iff <x*, c - x> <= 0 for every corner c of the box.
  Rng rng(5);
  const Vec lo = vec({0, -1}), hi = vec({1, 2});
  const std::vector<Vec> corners = pts({{0, -1}, {1, -1}, {0, 2}, {1, 2}});
  const std::vector<Vec> probes = pts({{0, -1}, {1, 2}, {0, 0.5}, {0.3, 2}, {0.4, 0.1}});
  for (const Vec& x : probes) {
    const NormalConeDescriptor n = normal_cone_box(lo, hi, x);
    for (int t = 0; t < 200; ++t) {
      const Vec s = rng.in_ball(Vec::Zero(2), 1.0);
      bool normal = true;
      for (const Vec& c : corners) normal = normal && s.dot(c - x) <= 1e-12;
      CHECK(n.contains(s, 1e-12) == normal);
    }
  }
}

TEST_CASE("finite-set normal cones") {
  const PointSet f0 = PointSet::from_points(pts({{1, -1}, {-1, 1}}));
  CHECK(normal_cone_finite(f0, vec({1, -1})).kind == NormalConeDescriptor::Kind::FullSpace);
  CHECK(normal_cone_finite(f0, vec({1, -1})).dim == 2);
  CHECK_ERROR(normal_cone_finite(f0, vec({0, 0})), ErrorCode::PointNotInSet);
}

TEST_CASE("coderivative") {
  const SetMap f = two_branch();
  CHECK(coderivative(f, vec({0}), vec({1, -1}), vec({0.3, 0.4}))[0] == doctest::Approx(0.7));
  CHECK(coderivative(f, vec({0}), vec({-1, 1}), vec({0.3, 0.4}))[0] == doctest::Approx(-0.7));
  CHECK(coderivative(f, vec({0}), vec({1, -1}), vec({0, 0}))[0] == 0.0);
  CHECK_ERROR(coderivative(f, vec({0}), vec({0, 0}), vec({1, 0})), ErrorCode::PointNotInSet);
  const SetMap dup = SetMap::from_strings(1, 2, {{"x1", "x1"}, {"2*x1", "0"}});
  CHECK_ERROR(coderivative(dup, vec({0}), vec({0, 0}), vec({1, 0})), ErrorCode::CollidingComponents);

  const SetMap g = SetMap::from_strings(2, 2, {{"x1*x2 + sin(x1)", "exp(x2)"}});
  const Vec xb = vec({0.3, -0.2});
  const Vec yb = g.component_value(0, xb);
  const Vec a = vec({0.25, 0.75}), b = vec({1, 0});
  const Vec lhs = coderivative(g, xb, yb, 2.0 * a + 3.0 * b);
  const Vec rhs = 2.0 * coderivative(g, xb, yb, a) + 3.0 * coderivative(g, xb, yb, b);
  CHECK((lhs - rhs).norm() <= 1e-14);
}

TEST_CASE("assemble G on the two-branch map") {
  const ConeContext k = ConeContext::orthant(2);
  const GAssembly g1 = assemble_G(two_branch(), k, vec({0}), vec({1, -1}));
  CHECK(same_set(g1.g.vertices, pts({{1, -1, 0}, {1, 0, -1}})));
  CHECK(same_set(g1.a.vertices, pts({{1}})));
  const GAssembly g2 = assemble_G(two_branch(), k, vec({0}), vec({-1, 1}));
  CHECK(same_set(g2.a.vertices, pts({{-1}})));
  CHECK(same_set(project(g1.g.vertices, std::vector<Eigen::Index>{0}), pts({{1}})));
}

TEST_CASE("assemble G and H on the diagonal map") {
  const ConeContext k = ConeContext::orthant(2);
  const SetMap f = SetMap::from_strings(1, 2, {{"x1", "x1"}});
  CHECK(same_set(assemble_G(f, k, vec({0}), vec({0, 0})).a.vertices, pts({{1}})));
  const HAssembly h = assemble_H_and_B(f, k, vec({0}), vec({0, 0}));
  CHECK(same_set(h.h.vertices, pts({{-1, 0}, {0, -1}})));
  CHECK(same_set(h.b.vertices, pts({{1}})));
}

TEST_CASE("assemble H and B on the two-branch map") {
  const ConeContext k = ConeContext::orthant(2);
  const HAssembly h1 = assemble_H_and_B(two_branch(), k, vec({0}), vec({1, -1}));
  CHECK(same_set(h1.h.vertices, pts({{-1, 0}, {0, -1}})));
  CHECK(same_set(h1.b.vertices, pts({{1}})));
  CHECK(same_set(assemble_H_and_B(two_branch(), k, vec({0}), vec({-1, 1})).b.vertices, pts({{-1}})));
  Mat m(1, 2);
  m << 1, 1;
  CHECK(same_set(linear_image(h1.h.vertices, m), pts({{-1}})));
}

TEST_CASE("assembly errors") {
  const ConeContext k = ConeContext::orthant(2);
  const SetMap f = SetMap::from_strings(1, 2, {{"x1", "x1"}, {"x1 + 1", "x1 + 1"}});
  CHECK_ERROR(assemble_G(f, k, vec({0}), vec({1, 1})), ErrorCode::NotWeaklyMinimal);
  CHECK_ERROR(assemble_H_and_B(f, k, vec({0}), vec({0, 0})), ErrorCode::NotWeaklyMaximal);
  const SetMap c = SetMap::from_strings(1, 2, {{"x1", "0"}, {"0", "x1"}});
  CHECK_ERROR(assemble_G(c, k, vec({0}), vec({0, 0})), ErrorCode::CollidingComponents);
  CHECK_ERROR(require_no_collisions(c.evaluate(vec({0}))), ErrorCode::CollidingComponents);
}

TEST_CASE("every vertex replays from its provenance") {
  Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index m = 2 + t % 2;
    const oracle::RawCone raw = oracle::random_cone(m, rng);
    const ConeContext k = ConeContext::build(raw.dual, raw.e);
    // Integer coefficients make ties between components, so several anchors sit on the boundary.
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < 3; ++i) {
      std::vector<std::string> row;
      for (Eigen::Index c = 0; c < m; ++c) {
        const double a = std::round(rng.uniform(-3, 3));
        const double b = std::round(rng.uniform(-2, 2));
        row.push_back(std::to_string(a) + "*x1 + " + std::to_string(b) + " + x2^2");
      }
      rows.push_back(row);
    }
    const SetMap f = SetMap::from_strings(2, static_cast<int>(m), rows);
    const Vec xb = vec({0.1, 0.2});
    const Image img = f.evaluate(xb);
    if (img.points.size() != 3) continue;
    const auto& w = k.normalized_generators();
    for (std::size_t a : extremal_indices(img.points, k, ElementKind::WMin)) {
      const GAssembly g = assemble_G(f, k, xb, img.points[a]);
      for (std::size_t v = 0; v < g.g.vertices.size(); ++v) {
        const Provenance& p = g.g.provenance[v];
        const Mat jt = f.component_jacobian(img.sources[p.zbar][0], xb).transpose();
        Vec expect(2 + m);
        expect << jt * w[p.generator], -w[p.generator];
        CHECK((g.g.vertices[v] - expect).norm() <= 1e-12);
      }
    }
    for (std::size_t a : extremal_indices(img.points, k, ElementKind::WMax)) {
      const HAssembly h = assemble_H_and_B(f, k, xb, img.points[a]);
      const Mat jt = f.component_jacobian(img.sources[a][0], xb).transpose();
      for (std::size_t v = 0; v < h.h.vertices.size(); ++v) {
        const Vec& wg = w[h.h.provenance[v].generator];
        CHECK((h.h.vertices[v] + wg).norm() <= 1e-12);
        CHECK((h.b.vertices[v] - jt * wg).norm() <= 1e-12);
      }
    }
  }
}

TEST_CASE("B from vertex images matches the image of a dense sample of H") {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const oracle::RawCone raw = oracle::random_cone(2, rng, 3);
    const ConeContext k = ConeContext::build(raw.dual, raw.e);
    const std::vector<Vec> face = k.normalized_generators();
    Mat j(2, 2);
    j << rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2);
    std::vector<Vec> h;
    for (const Vec& w : face) h.push_back(-w);
    const std::vector<Vec> b = linear_image(h, -j.transpose());
    std::vector<Vec> sampled;
    for (const Vec& s : oracle::dense_hull_sample(h, 4000, rng)) sampled.push_back(-j.transpose() * s);
    CHECK(oracle::sample_hausdorff(b, sampled) <= 1e-6);
  }
}
