#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setopt/normals.hpp"
#include "setopt/scalfun.hpp"

namespace setopt {

enum class MinimalityNotion { Lower, Upper, VectorWeak };
enum class OracleProperty { Minimality, Consistency, Convexity, Lipschitz, Invariance };

std::string_view to_string(MinimalityNotion r);
std::string_view to_string(OracleProperty p);

inline constexpr std::string_view kGridCaveat =
    "no violation on this grid; this is not a proof of local minimality";

struct Counterexample {
  /// Minimality (l/u): the single dominating x. Vector-weak: one x per anchor of
  /// F(xbar), in anchor order. Convexity: the two sample points.
  std::vector<Vec> xs;
  std::string evidence;
  double value = 0.0;  // merit value or convexity excess, where meaningful
};

struct GridVerdict {
  OracleProperty property = OracleProperty::Minimality;
  std::optional<MinimalityNotion> notion;
  bool holds = true;
  std::optional<Counterexample> counterexample;
  Vec center;
  double radius = 0.0;
  double step = 0.0;  // zero for sampled checks
  long samples_checked = 0;
  std::optional<bool> hypothesis_verified;  // convexity only
};

struct GridOptions {
  double radius = 0.5;
  double step = 1e-3;
  int max_dim = 3;  // grid explosion guard; raise explicitly to override
};

/// Exhaustive check of Omega ∩ (xbar + radius * cube) on the step lattice,
/// in lexicographic order. Lower/upper: no x != xbar with F(x) strictly below F(xbar).
/// Vector-weak: some anchor ybar in F(xbar) with F(grid) ∩ (ybar - int K) empty.
GridVerdict local_weak_minimality_grid(const SetMap& map, const ConeContext& ctx,
                                       const Vec& xbar, const Omega& omega,
                                       MinimalityNotion notion, const GridOptions& grid,
                                       const Tolerances& tol = {});

/// Re-evaluates a minimality counterexample; true when the violation reproduces.
bool replay_counterexample(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                           MinimalityNotion notion, const Counterexample& cex,
                           const Tolerances& tol = {});

/// WMin (or WMax) from the zero level of the inner scalarization, compared with
/// the pairwise definition.
bool extremal_cross_check(const PointSet& a, const ConeContext& ctx, ElementKind kind,
                          const Tolerances& tol = {});
bool wmin_cross_check(const PointSet& a, const ConeContext& ctx, const Tolerances& tol = {});

/// On the grid, f_{r,xbar}(x) < -tau must coincide with F(x) strictly below F(xbar).
GridVerdict scalarization_consistency(const SetMap& map, const ConeContext& ctx,
                                      const Vec& xbar, const Omega& omega, SetRelation r,
                                      const GridOptions& grid, const Tolerances& tol = {});

/// Midpoint convexity of f_{l,xbar} on random pairs in the ball around xbar.
/// Informational unless F has one affine component.
GridVerdict sample_convexity(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                             double radius, int trials, std::uint64_t seed,
                             const Tolerances& tol = {});

struct LipschitzReport {
  double quotient_max = 0.0;
  double lipschitz_estimate = 0.0;  // sampled Hausdorff modulus of F
  double rho = 0.0;
  double bound = 0.0;               // rho * (1 + lipschitz_estimate)
  bool holds = true;
  int trials = 0;
};

/// Sampled modulus of f_{l,xbar} against rho * (1 + l), with 5% slack. The
/// modulus of F is estimated on the same sample points.
LipschitzReport sample_lipschitz_bound(const SetMap& map, const ConeContext& ctx,
                                       const Vec& xbar, double radius, int trials,
                                       std::uint64_t seed, const Tolerances& tol = {});

struct InvarianceReport {
  bool holds = true;
  double max_deviation = 0.0;
  int probes = 0;
};

/// Adding components f_i + k (f_i - k for the upper side), k in K, leaves
/// f_l, g_l (f_u, g_u) unchanged at random probes.
InvarianceReport invariance_check(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                                  const Vec& k, int probes, std::uint64_t seed,
                                  double radius = 0.5, const Tolerances& tol = {});

}  // namespace setopt
