#pragma once

#include <optional>
#include <vector>

#include "setopt/scalfun.hpp"
#include "setopt/stationarity.hpp"

namespace setopt {

enum class Termination { ResidualBelowTol, StepBelowTol, MaxIters };

std::string_view to_string(Termination t);

struct DescentParams {
  double step0 = 0.0;  // <= 0 selects 0.1 * (1 + |x0|)
  double sigma = 0.1;
  double shrink = 0.5;
  double tol_step = 1e-8;
  double tol_res = 1e-7;
  int max_iters = 500;
  int directions_per_iter = 2;
  std::uint64_t seed = 0;
};

struct IterateRecord {
  Vec x;
  double step = 0.0;
  /// Stationarity residual at x; +inf when components collide there.
  double residual = 0.0;
  /// Best merit f_{r,x}(candidate) of the round, absent when no candidate was evaluated.
  std::optional<double> merit;
  bool accepted = false;
};

struct DescentTrace {
  std::vector<IterateRecord> iterates;
  Termination termination = Termination::MaxIters;
  Vec x;
  std::optional<StationarityCertificate> final_certificate;
};

/// Heuristic sampling descent with a moving anchor: at x_k, candidates x_k +- step e_i
/// and random unit directions (clamped to Omega) are scored by f_{r,x_k}; the best is
/// accepted when its merit is below -sigma * step, otherwise the step shrinks.
DescentTrace descend(const SetMap& map, const ConeContext& ctx, const Vec& x0,
                     const Omega& omega, SetRelation r, const DescentParams& params = {},
                     const Tolerances& tol = {});

}  // namespace setopt
