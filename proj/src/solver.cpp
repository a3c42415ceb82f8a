#include "setopt/solver.hpp"

#include <limits>

namespace setopt {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ResidualBelowTol: return "ResidualBelowTol";
    case Termination::StepBelowTol: return "StepBelowTol";
    case Termination::MaxIters: return "MaxIters";
  }
  return "Unknown";
}

namespace {

std::optional<StationarityCertificate> try_certificate(const SetMap& map, const ConeContext& ctx,
                                                       const Vec& x, const Omega& omega,
                                                       SetRelation r, const Tolerances& tol) {
  try {
    return stationarity(map, ctx, x, omega, r, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CollidingComponents) return std::nullopt;
    throw;
  }
}

}  // namespace

DescentTrace descend(const SetMap& map, const ConeContext& ctx, const Vec& x0,
                     const Omega& omega, SetRelation r, const DescentParams& params,
                     const Tolerances& tol) {
  require_dim(x0, map.n(), "x0");
  if (!omega.contains(x0, tol.mem)) throw Error(ErrorCode::NotInOmega, "x0 is not in Omega");
  if (!(params.sigma > 0.0) || !(params.shrink > 0.0 && params.shrink < 1.0) ||
      !(params.tol_step > 0.0) || !(params.tol_res > 0.0) || params.max_iters < 1 ||
      params.directions_per_iter < 0) {
    throw Error(ErrorCode::InvalidArgument, "descent parameters out of range");
  }
  const Eigen::Index n = x0.size();
  Rng rng(params.seed);
  DescentTrace trace;
  Vec x = omega.project(x0);
  double step = params.step0 > 0.0 ? params.step0 : 0.1 * (1.0 + x0.norm());

  for (int k = 0;; ++k) {
    auto cert = try_certificate(map, ctx, x, omega, r, tol);
    IterateRecord rec;
    rec.x = x;
    rec.step = step;
    rec.residual = cert ? cert->residual : std::numeric_limits<double>::infinity();
    if (rec.residual <= params.tol_res || step < params.tol_step || k >= params.max_iters) {
      trace.termination = rec.residual <= params.tol_res ? Termination::ResidualBelowTol
                          : step < params.tol_step     ? Termination::StepBelowTol
                                                       : Termination::MaxIters;
      trace.iterates.push_back(rec);
      trace.x = x;
      trace.final_certificate = std::move(cert);
      return trace;
    }

    std::vector<Vec> candidates;
    for (Eigen::Index i = 0; i < n; ++i) {
      candidates.push_back(x + step * Vec::Unit(n, i));
      candidates.push_back(x - step * Vec::Unit(n, i));
    }
    for (int d = 0; d < params.directions_per_iter; ++d) {
      candidates.push_back(x + step * rng.unit_direction(n));
    }
    const Image anchor = map.evaluate(x, tol.eq);
    std::optional<double> best;
    Vec best_x;
    for (const Vec& c : candidates) {
      const Vec y = omega.project(c);
      if ((y - x).norm() == 0.0) continue;
      const double merit = scalarize_images(anchor, map.evaluate(y, tol.eq), ctx, r, tol.act).value;
      if (!best || merit < *best) {
        best = merit;
        best_x = y;
      }
    }
    rec.merit = best;
    if (best && *best < -params.sigma * step) {
      rec.accepted = true;
      x = best_x;
    } else {
      step *= params.shrink;
    }
    trace.iterates.push_back(rec);
  }
}

}  // namespace setopt
