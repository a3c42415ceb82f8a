#pragma once

#include <optional>
#include <span>
#include <vector>

#include "setopt/cone.hpp"

namespace setopt {

/// Finite, nonempty, deduplicated set of points in R^m.
class PointSet {
 public:
  /// Merges points closer than tau_eq (the first occurrence is kept). When
  /// `sources` is non-null it receives, per surviving point, the input indices
  /// that were merged into it.
  static PointSet from_points(std::span<const Vec> points, double tau_eq = 1e-9,
                              std::vector<std::vector<std::size_t>>* sources = nullptr);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const Vec& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Vec>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Index of the point within tau of y, if any.
  std::optional<std::size_t> find(const Vec& y, double tau) const;

 private:
  std::vector<Vec> points_;
  Eigen::Index dim_ = 0;
};

enum class SetRelation { Lower, Upper };
enum class ElementKind { Min, WMin, Max, WMax, SMin };

std::string_view to_string(SetRelation r);
std::string_view to_string(ElementKind k);

/// A <=^(l) B : every b in B lies in A + K (A + int K when strict).
bool lower_less(const PointSet& a, const PointSet& b, const ConeContext& ctx, bool strict,
                double tau_mem = 1e-9);
/// A <=^(u) B : every a in A lies in B - K (B - int K when strict).
bool upper_less(const PointSet& a, const PointSet& b, const ConeContext& ctx, bool strict,
                double tau_mem = 1e-9);
bool set_equivalent(const PointSet& a, const PointSet& b, const ConeContext& ctx,
                    SetRelation r, double tau_mem = 1e-9);

/// Indices (into `a`) of the requested extremal elements, in input order.
std::vector<std::size_t> extremal_indices(const PointSet& a, const ConeContext& ctx,
                                          ElementKind kind, double tau_mem = 1e-9);

/// Extremal subset as a point set; SMin may be empty, so this returns a list.
std::vector<Vec> minimal_elements(const PointSet& a, const ConeContext& ctx, ElementKind kind,
                                  double tau_mem = 1e-9);

/// Lower: sup_{b in B} inf_{a in A} psi(a - b). Upper: sup_{a in A} inf_{b in B} psi(a - b).
double scalar_gap(const PointSet& a, const PointSet& b, const ConeContext& ctx, SetRelation r);

}  // namespace setopt
