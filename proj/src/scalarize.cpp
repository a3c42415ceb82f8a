#include "setopt/scalarize.hpp"

#include <limits>

namespace setopt {

double psi(const ConeContext& ctx, const Vec& y) {
  require_dim(y, ctx.dim(), "point");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& w : ctx.normalized_generators()) best = std::max(best, w.dot(y));
  return best;
}

SubdifferentialFace psi_subdifferential(const ConeContext& ctx, const Vec& y, double tau_act) {
  SubdifferentialFace face;
  face.value = psi(ctx, y);
  const double cutoff = face.value - active_band(tau_act, face.value);
  const auto& ws = ctx.normalized_generators();
  for (std::size_t j = 0; j < ws.size(); ++j) {
    if (ws[j].dot(y) >= cutoff) {
      face.vertices.push_back(ws[j]);
      face.generator_indices.push_back(j);
    }
  }
  return face;
}

}  // namespace setopt
