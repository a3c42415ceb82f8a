#pragma once

#include <span>
#include <vector>

#include "setopt/normal_cone.hpp"

namespace setopt {

struct MinNormResult {
  Vec point;
  double distance = 0.0;
  Vec lambda;       // convex weights over the vertices
  Vec ray_weights;  // nonnegative weights over the rays (empty without rays)
  int iterations = 0;
};

/// Minimum-norm point of conv(vertices) by Wolfe's method.
MinNormResult min_norm_point(std::span<const Vec> vertices, double tol = 1e-14,
                             int max_iterations = 0);

/// Minimum-norm point of conv(vertices) + cone(rays). Wolfe's corral iteration
/// with rays carrying free-sum nonnegative weights.
MinNormResult min_norm_point(std::span<const Vec> vertices, std::span<const Vec> rays,
                             double tol = 1e-14, int max_iterations = 0);

struct MembershipCertificate {
  bool decision = false;
  Vec coefficients;   // lambda over the vertices
  Vec normal_part;    // element of N with point + normal_part closest to zero
  double residual = 0.0;
  Vec separating_direction;  // set when decision is false
  bool marginal = false;     // residual within a decade of tau_stat
  double tau_stat = 0.0;
};

/// Decides 0 in conv(vertices) + N. N must be a box pattern ({0} included).
MembershipCertificate contains_zero(std::span<const Vec> vertices,
                                    const NormalConeDescriptor& normal, double tau_stat = 1e-7);

struct LpFeasibility {
  bool feasible = false;
  double infeasibility = 0.0;  // optimal phase-1 objective
  Vec lambda;
};

/// Phase-1 simplex (Bland's rule) on {lambda in simplex, mu >= 0 : V lambda + R mu = 0}.
/// Independent of the min-norm route; used to cross-check membership decisions.
LpFeasibility zero_in_hull_lp(std::span<const Vec> vertices, const NormalConeDescriptor& normal,
                              double tol = 1e-9);

std::vector<Vec> project(std::span<const Vec> vertices, std::span<const Eigen::Index> coords);
std::vector<Vec> linear_image(std::span<const Vec> vertices, const Mat& m);

}  // namespace setopt
