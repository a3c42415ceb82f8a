#pragma once

#include <vector>

#include "setopt/cone.hpp"

namespace setopt {

/// Active face of the subdifferential of psi at a point: conv of the listed
/// normalized generators. The list may contain redundant (non-extreme) vectors.
struct SubdifferentialFace {
  std::vector<Vec> vertices;
  std::vector<std::size_t> generator_indices;  // into ConeContext::normalized_generators()
  double value = 0.0;
};

/// psi(y) = inf{t : y in t e - K}, evaluated as max_j <w_j, y>.
double psi(const ConeContext& ctx, const Vec& y);

/// Generators with <w_j, y> >= psi(y) - tau_act * max(1, |psi(y)|).
SubdifferentialFace psi_subdifferential(const ConeContext& ctx, const Vec& y,
                                        double tau_act = 1e-8);

}  // namespace setopt
