#include "helpers.hpp"
#include "setopt/setmap.hpp"

using namespace setopt;

namespace {
SetMap two_branch() {
  return SetMap::from_strings(1, 2, {{"x1 + 1", "x1 - 1"}, {"-(x1 + 1)", "-(x1 - 1)"}});
}
}  // namespace

TEST_CASE("evaluate with provenance") {
  const SetMap f = two_branch();
  const Image at0 = f.evaluate(vec({0}));
  CHECK(same_set(at0.points.points(), pts({{1, -1}, {-1, 1}})));
  CHECK(at0.sources == std::vector<std::vector<std::size_t>>{{0}, {1}});
  CHECK(same_set(f.evaluate(vec({0.5})).points.points(), pts({{1.5, -0.5}, {-1.5, 0.5}})));
  const SetMap dup = SetMap::from_strings(1, 2, {{"x1", "2*x1"}, {"x1", "2*x1"}});
  const Image d = dup.evaluate(vec({1}));
  CHECK(d.points.size() == 1);
  CHECK(d.sources[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("construction errors") {
  CHECK_ERROR(SetMap::from_strings(1, 2, {{"x1"}}), ErrorCode::DimensionMismatch);
  CHECK_ERROR(SetMap::from_strings(1, 2, {}), ErrorCode::InvalidArgument);
  CHECK_ERROR(two_branch().evaluate(vec({0, 0})), ErrorCode::DimensionMismatch);
  CHECK_ERROR(SetMap::from_strings(1, 1, {{"1/x1"}}).evaluate(vec({0})), ErrorCode::DomainError);
}

TEST_CASE("jacobians") {
  const auto j = two_branch().jacobians(vec({0}));
  CHECK(j[0].rows() == 2);
  CHECK(j[0].cols() == 1);
  CHECK(j[0].isApprox(Mat::Ones(2, 1)));
  CHECK(j[1].isApprox(-Mat::Ones(2, 1)));
  const SetMap aff = SetMap::from_strings(2, 2, {{"2*x1 - x2 + 4", "3*x2"}});
  Mat a(2, 2);
  a << 2, -1, 0, 3;
  CHECK(aff.component_jacobian(0, vec({5, -7})).isApprox(a));
}

TEST_CASE("jacobians agree with finite differences") {
  const SetMap f = SetMap::from_strings(2, 2, {{"x1*x2", "sin(x1) + x2^2"}, {"exp(x1 - x2)", "x1/(3 + x2^2)"}});
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const Vec x = rng.in_ball(Vec::Zero(2), 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Mat j = f.component_jacobian(i, x);
      for (Eigen::Index c = 0; c < 2; ++c) {
        const double h = 1e-6;
        const Vec dx = h * Vec::Unit(2, c);
        const Vec fd = (f.component_value(i, x + dx) - f.component_value(i, x - dx)) / (2 * h);
        CHECK((j.col(c) - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
      }
    }
  }
}

TEST_CASE("provenance covers every component once") {
  const SetMap f = SetMap::from_strings(1, 1, {{"x1"}, {"x1^2"}, {"0"}, {"x1^3"}});
  for (double x : {0.0, 1.0, -1.0, 0.5}) {
    const Image img = f.evaluate(vec({x}));
    std::vector<int> seen(4, 0);
    for (const auto& s : img.sources) {
      for (std::size_t i : s) ++seen[i];
    }
    CHECK(seen == std::vector<int>{1, 1, 1, 1});
  }
}

TEST_CASE("augmentation and scaling") {
  const SetMap f = two_branch();
  const SetMap g = f.augmented(vec({1, 2}), 1.0);
  CHECK(g.size() == 4);
  CHECK(same_set(g.evaluate(vec({0})).points.points(), pts({{1, -1}, {-1, 1}, {2, 1}, {0, 3}})));
  const SetMap s = f.scaled(3.0);
  CHECK(same_set(s.evaluate(vec({0})).points.points(), pts({{3, -3}, {-3, 3}})));
}

TEST_CASE("Hausdorff distance and Lipschitz estimates") {
  const PointSet a = PointSet::from_points(pts({{0, 0}}));
  const PointSet b = PointSet::from_points(pts({{3, 4}, {0, 1}}));
  CHECK(hausdorff_distance(a, b) == doctest::Approx(5.0));
  CHECK(hausdorff_distance(b, a) == doctest::Approx(5.0));

  const double l = estimate_lipschitz(two_branch(), vec({0}), 0.5, 50, 1);
  CHECK(l <= std::sqrt(2.0) + 1e-9);
  CHECK(l >= std::sqrt(2.0) - 1e-6);
  CHECK(estimate_lipschitz(SetMap::from_strings(1, 2, {{"1", "2"}}), vec({0}), 0.5, 20, 1) == 0.0);

  const SetMap lin = SetMap::from_strings(2, 2, {{"2*x1 + x2", "x1 - x2"}});
  Mat a2(2, 2);
  a2 << 2, 1, 1, -1;
  const double opnorm = Eigen::JacobiSVD<Mat>(a2).singularValues()[0];
  CHECK(estimate_lipschitz(lin, vec({0, 0}), 1.0, 100, 2) <= opnorm + 1e-9);

  double prev = 0.0;
  for (int s : {2, 5, 10, 40, 80}) {
    const double cur = estimate_lipschitz(lin, vec({0, 0}), 1.0, s, 7);
    CHECK(cur >= prev);
    prev = cur;
  }
}
