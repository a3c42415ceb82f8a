#pragma once

#include <string>
#include <vector>

#include "setopt/expr.hpp"
#include "setopt/setrel.hpp"

namespace setopt {

/// Evaluated image F(x) with component provenance: sources[k] lists the
/// (zero-based) component indices whose value was merged into points[k].
struct Image {
  PointSet points;
  std::vector<std::vector<std::size_t>> sources;
};

/// Set-valued map F(x) = {f_1(x), ..., f_p(x)} with smooth components f_i : R^n -> R^m.
class SetMap {
 public:
  SetMap(int n, int m, std::vector<std::vector<Expression>> components,
         std::vector<std::string> labels = {});

  /// Components given as expression text, one row of m strings per component.
  static SetMap from_strings(int n, int m, const std::vector<std::vector<std::string>>& rows);

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return components_.size(); }
  const std::vector<std::vector<Expression>>& components() const { return components_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Vec component_value(std::size_t i, const Vec& x) const;
  Mat component_jacobian(std::size_t i, const Vec& x) const;  // m x n

  Image evaluate(const Vec& x, double tau_eq = 1e-9) const;
  std::vector<Mat> jacobians(const Vec& x) const;

  /// F plus extra components f_i + sign * shift (the original components are kept).
  SetMap augmented(const Vec& shift, double sign) const;
  /// Every coordinate expression multiplied by c.
  SetMap scaled(double c) const;

 private:
  int n_;
  int m_;
  std::vector<std::vector<Expression>> components_;
  std::vector<std::string> labels_;
};

/// Two-sided Hausdorff distance between finite sets.
double hausdorff_distance(const PointSet& a, const PointSet& b);

/// Sampled lower bound on the local Lipschitz modulus of F in the Hausdorff sense:
/// max over all pairs of `samples` points drawn in the ball of
/// H(F(x), F(x')) / |x - x'|. The i-th sample is the same for any sample count.
double estimate_lipschitz(const SetMap& map, const Vec& center, double radius, int samples,
                          std::uint64_t seed);

}  // namespace setopt
