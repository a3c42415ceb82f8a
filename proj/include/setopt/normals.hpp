#pragma once

#include <vector>

#include "setopt/normal_cone.hpp"
#include "setopt/scalarize.hpp"
#include "setopt/setmap.hpp"

namespace setopt {

/// Feasible region of the decision variable: all of R^n or a closed box.
struct Omega {
  enum class Kind { Free, Box };

  Kind kind = Kind::Free;
  Eigen::Index dim = 0;
  Vec lower;
  Vec upper;

  static Omega free(Eigen::Index n);
  static Omega box(Vec lower, Vec upper);

  bool contains(const Vec& x, double tau) const;
  Vec project(const Vec& x) const;  // coordinate clamp; identity when free
  NormalConeDescriptor normal_cone(const Vec& x, double tau) const;
};

/// x* = J_i(xbar)^T y* for the unique component i with f_i(xbar) = ybar.
Vec coderivative(const SetMap& map, const Vec& xbar, const Vec& ybar, const Vec& ystar,
                 double tau_eq = 1e-9);

NormalConeDescriptor normal_cone_finite(const PointSet& a, const Vec& ybar, double tau_eq = 1e-9);

NormalConeDescriptor normal_cone_box(const Vec& lower, const Vec& upper, const Vec& x,
                                     double tau_mem = 1e-9);

struct Provenance {
  std::size_t zbar;       // index into the deduplicated image F(xbar)
  std::size_t generator;  // index into ConeContext::normalized_generators()
};

struct EstimatePolytope {
  std::vector<Vec> vertices;
  std::vector<Provenance> provenance;
};

struct GAssembly {
  std::size_t anchor;     // index of ybar in F(xbar)
  std::size_t component;  // component index i(ybar)
  EstimatePolytope g;     // in R^{n+m}
  EstimatePolytope a;     // first n coordinates of g
};

struct HAssembly {
  std::size_t anchor;
  std::size_t component;
  EstimatePolytope h;  // in R^m
  EstimatePolytope b;  // in R^n
};

/// Upper estimate G of the subdifferential of f_l at (xbar, ybar), ybar in WMin(F(xbar)).
GAssembly assemble_G(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                     const Vec& ybar, const Tolerances& tol = {});

/// H at (xbar, ybar), ybar in WMax(F(xbar)), and its coderivative image B (sign included).
HAssembly assemble_H_and_B(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                           const Vec& ybar, const Tolerances& tol = {});

/// Throws CollidingComponents if two components of F share a value at x.
void require_no_collisions(const Image& image);

}  // namespace setopt
