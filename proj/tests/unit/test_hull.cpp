#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "setopt/hull.hpp"

using namespace setopt;

TEST_CASE("min-norm point examples") {
  const MinNormResult a = min_norm_point(pts({{1}, {-1}}));
  CHECK(a.distance <= 1e-15);
  CHECK(a.lambda[0] == doctest::Approx(0.5));
  const MinNormResult b = min_norm_point(pts({{2, 0}, {0, 2}}));
  CHECK((b.point - vec({1, 1})).norm() <= 1e-12);
  CHECK(b.distance == doctest::Approx(std::sqrt(2.0)));
  const MinNormResult c = min_norm_point(pts({{3, 4}}));
  CHECK(c.distance == doctest::Approx(5.0));
  CHECK_ERROR(min_norm_point(std::vector<Vec>{}), ErrorCode::InvalidArgument);
}

TEST_CASE("min-norm point with rays") {
  const std::vector<Vec> v = pts({{1, 1}});
  const MinNormResult r = min_norm_point(v, pts({{-1, 0}}));
  CHECK((r.point - vec({0, 1})).norm() <= 1e-12);
  CHECK(r.ray_weights[0] == doctest::Approx(1.0));
}

TEST_CASE("contains_zero examples") {
  const auto zero = NormalConeDescriptor::zero(1);
  const MembershipCertificate a = contains_zero(pts({{1}, {-1}}), zero);
  CHECK(a.decision);
  CHECK(a.residual <= 1e-15);
  CHECK(a.coefficients[0] == doctest::Approx(0.5));
  const MembershipCertificate b = contains_zero(pts({{1}}), zero);
  CHECK_FALSE(b.decision);
  CHECK(b.residual == doctest::Approx(1.0));
  CHECK(b.separating_direction[0] == doctest::Approx(1.0));
  const MembershipCertificate c = contains_zero(pts({{1}}), NormalConeDescriptor::box({BoxFlag::NonPos}));
  CHECK(c.decision);
  CHECK(c.normal_part[0] == doctest::Approx(-1.0));
  CHECK_ERROR(contains_zero(pts({{1}}), NormalConeDescriptor::full_space(1)), ErrorCode::InvalidArgument);
  CHECK_ERROR(contains_zero(pts({{1, 0}}), zero), ErrorCode::DimensionMismatch);
}

TEST_CASE("marginal decisions are flagged") {
  const auto zero = NormalConeDescriptor::zero(1);
  CHECK(contains_zero(pts({{5e-8}}), zero).marginal);
  CHECK_FALSE(contains_zero(pts({{1}}), zero).marginal);
}

TEST_CASE("project and linear image") {
  const std::vector<Vec> g = pts({{1, -1, 0}, {1, 0, -1}});
  CHECK(same_set(project(g, std::vector<Eigen::Index>{0}), pts({{1}})));
  CHECK(same_set(project(g, std::vector<Eigen::Index>{0, 1, 2}), g));
  CHECK_ERROR(project(g, std::vector<Eigen::Index>{3}), ErrorCode::IndexOutOfRange);
  CHECK(same_set(linear_image(g, Mat::Identity(3, 3)), g));
  CHECK_ERROR(linear_image(g, Mat::Identity(2, 2)), ErrorCode::DimensionMismatch);

  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    std::vector<Vec> v;
    for (int i = 0; i < 5; ++i) v.push_back(rng.in_ball(Vec::Zero(3), 1.0));
    const std::vector<Eigen::Index> coords{0, 2};
    std::vector<Vec> sampled;
    for (const Vec& s : oracle::dense_hull_sample(v, 3000, rng)) sampled.push_back(vec({s[0], s[2]}));
    CHECK(oracle::sample_hausdorff(project(v, coords), sampled) <= 1e-6);
  }
}

TEST_CASE("random polytopes against the enumeration oracle") {
  Rng rng(1);
  const auto uni = [](Eigen::Index d) { return NormalConeDescriptor::zero(d); };
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index d = 1 + t % 4;
    const int k = 1 + static_cast<int>(rng.uniform() * 7);
    const Vec shift = rng.in_ball(Vec::Zero(d), 1.0);
    std::vector<Vec> v;
    for (int i = 0; i < k; ++i) v.push_back(shift + rng.in_ball(Vec::Zero(d), 1.0));
    const MinNormResult r = min_norm_point(v);
    CHECK(std::abs(r.distance - oracle::min_norm_enumeration(v)) <= 1e-6);

    CHECK((r.lambda.array() >= -1e-12).all());
    CHECK(std::abs(r.lambda.sum() - 1.0) <= 1e-12);
    Vec recon = Vec::Zero(d);
    for (int i = 0; i < k; ++i) recon += r.lambda[i] * v[static_cast<std::size_t>(i)];
    CHECK((recon - r.point).norm() <= 1e-9);

    std::vector<Vec> shuffled = v;
    std::reverse(shuffled.begin(), shuffled.end());
    shuffled.push_back(v.front());
    CHECK(std::abs(min_norm_point(shuffled).distance - r.distance) <= 1e-9);

    const MembershipCertificate c = contains_zero(v, uni(d));
    const LpFeasibility lp = zero_in_hull_lp(v, uni(d));
    CHECK(c.decision == (r.distance <= 1e-7));
    if (r.distance > 1e-6 || r.distance < 1e-9) CHECK(lp.feasible == c.decision);
    if (!c.decision) {
      for (const Vec& x : v) CHECK(c.separating_direction.dot(x) >= c.residual - 1e-7);
    }
  }
}

TEST_CASE("box-pattern membership against the LP") {
  Rng rng(44);
  const BoxFlag choices[] = {BoxFlag::Zero, BoxFlag::NonNeg, BoxFlag::NonPos, BoxFlag::All};
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index d = 1 + t % 3;
    std::vector<BoxFlag> f;
    for (Eigen::Index i = 0; i < d; ++i) f.push_back(choices[static_cast<int>(rng.uniform() * 4)]);
    const auto n = NormalConeDescriptor::box(f);
    std::vector<Vec> v;
    const Vec shift = rng.in_ball(Vec::Zero(d), 1.5);
    for (int i = 0; i < 4; ++i) v.push_back(shift + rng.in_ball(Vec::Zero(d), 1.0));
    const MembershipCertificate c = contains_zero(v, n);
    const LpFeasibility lp = zero_in_hull_lp(v, n);
    if (c.residual > 1e-6 || c.residual < 1e-9) CHECK(lp.feasible == c.decision);
    if (c.decision) {
      Vec p = Vec::Zero(d);
      for (std::size_t i = 0; i < v.size(); ++i) p += c.coefficients[static_cast<Eigen::Index>(i)] * v[i];
      CHECK(n.contains(c.normal_part, 1e-9));
      CHECK((p + c.normal_part).norm() <= 1e-7);
    } else {
      for (const Vec& x : v) CHECK(c.separating_direction.dot(x) >= c.residual - 1e-7);
      for (const Vec& ray : n.rays()) CHECK(c.separating_direction.dot(ray) >= -1e-7);
    }
  }
}
