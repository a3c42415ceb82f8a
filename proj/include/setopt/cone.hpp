#pragma once

#include <span>
#include <vector>

#include "setopt/common.hpp"

namespace setopt {

enum class Membership { Interior, Boundary, Outside };

std::string_view to_string(Membership m);

/// Solid pointed polyhedral ordering cone K = {y : <d_j, y> >= 0 for all j}
/// together with an interior direction e.
///
/// Generators are stored after direction deduplication; w_j = d_j / <d_j, e> is
/// cached so that the scalarizing functional is max_j <w_j, y>.
class ConeContext {
 public:
  static ConeContext build(std::span<const Vec> dual_generators, const Vec& e,
                           double tau_eq = 1e-9);
  /// Nonnegative orthant R^m_+ with e = (1, ..., 1).
  static ConeContext orthant(Eigen::Index m);

  Eigen::Index dim() const { return e_.size(); }
  std::size_t num_generators() const { return dual_.size(); }
  const std::vector<Vec>& dual_generators() const { return dual_; }
  const std::vector<Vec>& normalized_generators() const { return normalized_; }
  const Vec& e() const { return e_; }

  /// Lipschitz constant of psi with respect to the Euclidean norm: max_j |w_j|.
  double rho() const { return rho_; }

  /// min_j <d_j, y>; positive inside, zero on the boundary, negative outside.
  double margin(const Vec& y) const;

  Membership classify(const Vec& y, double tau_mem = 1e-9) const;

 private:
  ConeContext() = default;

  std::vector<Vec> dual_;
  std::vector<Vec> normalized_;
  Vec e_;
  double rho_ = 0.0;
};

}  // namespace setopt
