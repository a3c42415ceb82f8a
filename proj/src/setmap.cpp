#include "setopt/setmap.hpp"

#include <limits>

namespace setopt {

SetMap::SetMap(int n, int m, std::vector<std::vector<Expression>> components,
               std::vector<std::string> labels)
    : n_(n), m_(m), components_(std::move(components)), labels_(std::move(labels)) {
  if (n_ < 1 || m_ < 1) throw Error(ErrorCode::InvalidArgument, "n and m must be >= 1");
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "map needs >= 1 component");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (static_cast<int>(components_[i].size()) != m_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "component " + std::to_string(i + 1) + " has " +
                      std::to_string(components_[i].size()) + " coordinates, expected " +
                      std::to_string(m_));
    }
    for (const Expression& e : components_[i]) {
      if (e.n_vars() != n_) {
        throw Error(ErrorCode::DimensionMismatch, "component expression over wrong variables");
      }
    }
  }
  if (!labels_.empty() && labels_.size() != components_.size()) {
    throw Error(ErrorCode::InvalidArgument, "one label per component required");
  }
}

SetMap SetMap::from_strings(int n, int m, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Expression>> comps;
  comps.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Expression> exprs;
    exprs.reserve(row.size());
    for (const auto& text : row) exprs.push_back(Expression::parse(text, n));
    comps.push_back(std::move(exprs));
  }
  return SetMap(n, m, std::move(comps));
}

Vec SetMap::component_value(std::size_t i, const Vec& x) const {
  require_dim(x, n_, "x");
  Vec y(m_);
  for (int r = 0; r < m_; ++r) y[r] = components_.at(i)[r].evaluate(x);
  return y;
}

Mat SetMap::component_jacobian(std::size_t i, const Vec& x) const {
  require_dim(x, n_, "x");
  Mat j(m_, n_);
  for (int r = 0; r < m_; ++r) {
    j.row(r) = components_.at(i)[r].eval_with_gradient(x).gradient.transpose();
  }
  return j;
}

Image SetMap::evaluate(const Vec& x, double tau_eq) const {
  std::vector<Vec> values;
  values.reserve(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) values.push_back(component_value(i, x));
  Image img;
  img.points = PointSet::from_points(values, tau_eq, &img.sources);
  return img;
}

std::vector<Mat> SetMap::jacobians(const Vec& x) const {
  std::vector<Mat> out;
  out.reserve(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) out.push_back(component_jacobian(i, x));
  return out;
}

SetMap SetMap::augmented(const Vec& shift, double sign) const {
  require_dim(shift, m_, "shift");
  auto comps = components_;
  for (const auto& comp : components_) {
    std::vector<Expression> moved;
    for (int r = 0; r < m_; ++r) {
      moved.push_back(comp[r] + Expression::constant(sign * shift[r], n_));
    }
    comps.push_back(std::move(moved));
  }
  std::vector<std::string> labels;
  if (!labels_.empty()) {
    labels = labels_;
    for (const auto& l : labels_) labels.push_back(l + (sign > 0 ? "+k" : "-k"));
  }
  return SetMap(n_, m_, std::move(comps), std::move(labels));
}

SetMap SetMap::scaled(double c) const {
  auto comps = components_;
  for (auto& comp : comps) {
    for (auto& e : comp) e = Expression::constant(c, n_) * e;
  }
  return SetMap(n_, m_, std::move(comps), labels_);
}

double hausdorff_distance(const PointSet& a, const PointSet& b) {
  auto excess = [](const PointSet& from, const PointSet& to) {
    double sup = 0.0;
    for (const Vec& p : from) {
      double inf = std::numeric_limits<double>::infinity();
      for (const Vec& q : to) inf = std::min(inf, (p - q).norm());
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(excess(a, b), excess(b, a));
}

double estimate_lipschitz(const SetMap& map, const Vec& center, double radius, int samples,
                          std::uint64_t seed) {
  require_dim(center, map.n(), "center");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  Rng rng(seed);
  std::vector<Vec> xs;
  std::vector<PointSet> images;
  for (int s = 0; s < samples; ++s) {
    xs.push_back(rng.in_ball(center, radius));
    // No dedup tolerance: the excess is computed on raw component values.
    images.push_back(map.evaluate(xs.back(), 0.0).points);
  }
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < i; ++j) {
      const double dx = (xs[i] - xs[j]).norm();
      if (dx <= 0.0) continue;
      best = std::max(best, hausdorff_distance(images[i], images[j]) / dx);
    }
  }
  return best;
}

}  // namespace setopt
