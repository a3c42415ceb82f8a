#include "helpers.hpp"
#include "oracles.hpp"
#include "setopt/scalarize.hpp"

using namespace setopt;

TEST_CASE("orthant with diagonal e is valid") {
  const auto d = pts({{1, 0}, {0, 1}});
  const ConeContext k = ConeContext::build(d, vec({1, 1}));
  CHECK(same_set(k.normalized_generators(), d));
  CHECK(k.rho() == doctest::Approx(1.0));
}

TEST_CASE("cone validation errors") {
  CHECK_ERROR(ConeContext::build(std::vector<Vec>{}, vec({1, 1})), ErrorCode::EmptyGenerators);
  CHECK_ERROR(ConeContext::build(pts({{1, 0}}), vec({1, 0})), ErrorCode::NotPointed);
  CHECK_ERROR(ConeContext::build(pts({{1, 0}, {0, 1}}), vec({1, 0})), ErrorCode::EnotInterior);
  CHECK_ERROR(ConeContext::build(pts({{1, 0}, {0, 1, 0}}), vec({1, 1})), ErrorCode::DimensionMismatch);
  CHECK_ERROR(ConeContext::build(pts({{1, 0}, {0, 1}}), vec({1, 1, 1})), ErrorCode::DimensionMismatch);
}

TEST_CASE("positive multiples are deduplicated") {
  const ConeContext k = ConeContext::build(pts({{1, 0}, {0, 1}, {3, 0}}), vec({1, 1}));
  CHECK(k.num_generators() == 2);
}

TEST_CASE("classify on the orthant") {
  const ConeContext k = ConeContext::orthant(2);
  CHECK(k.classify(vec({1, 1})) == Membership::Interior);
  CHECK(k.classify(vec({0, 1})) == Membership::Boundary);
  CHECK(k.classify(vec({-1, 2})) == Membership::Outside);
  CHECK_ERROR(k.classify(vec({1, 1, 1})), ErrorCode::DimensionMismatch);
}

TEST_CASE("classify invariants on random cones") {
  Rng rng(11);
  for (Eigen::Index m = 2; m <= 4; ++m) {
    for (int c = 0; c < 5; ++c) {
      const oracle::RawCone raw = oracle::random_cone(m, rng);
      const ConeContext k = ConeContext::build(raw.dual, raw.e);
      CHECK(k.classify(k.e()) == Membership::Interior);
      CHECK(k.classify(Vec::Zero(m)) == Membership::Boundary);
      for (int t = 0; t < 50; ++t) {
        const Vec y = rng.in_ball(Vec::Zero(m), 3.0);
        const Membership base = k.classify(y);
        for (double lam : {0.5, 2.0, 10.0}) {
          // Skip points whose margin sits inside the band after scaling.
          if (std::abs(k.margin(y)) * std::min(lam, 1.0) > 1e-8) CHECK(k.classify(lam * y) == base);
        }
      }
    }
  }
}

TEST_CASE("orthant classify agrees with coordinate signs") {
  const ConeContext k = ConeContext::orthant(3);
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const Vec y = rng.in_ball(Vec::Zero(3), 2.0);
    const Membership want = y.minCoeff() > 1e-9 ? Membership::Interior
                            : y.minCoeff() < -1e-9 ? Membership::Outside
                                                   : Membership::Boundary;
    CHECK(k.classify(y) == want);
  }
}
