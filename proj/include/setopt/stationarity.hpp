#pragma once

#include <optional>
#include <vector>

#include "setopt/hull.hpp"
#include "setopt/normals.hpp"

namespace setopt {

enum class StationarityKind { Lower, Upper, Vector };

std::string_view to_string(StationarityKind k);

struct AnchorRecord {
  std::size_t anchor;     // index into the deduplicated F(xbar)
  std::size_t component;  // component producing the anchor
  Vec point;
  EstimatePolytope estimate;   // G (lower) or H (upper)
  EstimatePolytope selection;  // A_ybar (lower) or B_ybar (upper)
};

struct StationarityCertificate {
  StationarityKind relation = StationarityKind::Lower;
  bool stationary = false;
  double residual = 0.0;
  std::vector<AnchorRecord> per_anchor;
  /// Concatenation of the selections in anchor order; membership.coefficients index this list.
  std::vector<Vec> union_vertices;
  MembershipCertificate membership;
  NormalConeDescriptor omega_normal;
};

/// 0 in conv(union of A_ybar over ybar in WMin F(xbar)) + N(xbar, Omega).
StationarityCertificate lower_stationarity(const SetMap& map, const ConeContext& ctx,
                                           const Vec& xbar, const Omega& omega,
                                           const Tolerances& tol = {});

/// 0 in conv(union of B_ybar over ybar in WMax F(xbar)) + N(xbar, Omega).
StationarityCertificate upper_stationarity(const SetMap& map, const ConeContext& ctx,
                                           const Vec& xbar, const Omega& omega,
                                           const Tolerances& tol = {});

StationarityCertificate stationarity(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                                     const Omega& omega, SetRelation r,
                                     const Tolerances& tol = {});

struct VectorStationarity {
  bool stationary = false;
  double residual = 0.0;  // smallest per-component distance
  std::vector<double> component_residuals;
  std::optional<std::size_t> component;  // first component admitting a witness
  Vec witness;                           // y* in K* \ {0} with J_i^T y* = 0
};

/// Exists i and y* in K* \ {0} with J_i(xbar)^T y* = 0.
VectorStationarity vector_stationarity(const SetMap& map, const ConeContext& ctx,
                                       const Vec& xbar, const Tolerances& tol = {});

}  // namespace setopt
