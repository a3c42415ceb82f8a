#include "setopt/setrel.hpp"

#include <limits>

#include "setopt/scalarize.hpp"

namespace setopt {

std::string_view to_string(SetRelation r) { return r == SetRelation::Lower ? "lower" : "upper"; }

std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::Min: return "Min";
    case ElementKind::WMin: return "WMin";
    case ElementKind::Max: return "Max";
    case ElementKind::WMax: return "WMax";
    case ElementKind::SMin: return "SMin";
  }
  return "Unknown";
}

PointSet PointSet::from_points(std::span<const Vec> points, double tau_eq,
                               std::vector<std::vector<std::size_t>>* sources) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "point set must be nonempty");
  PointSet set;
  set.dim_ = points.front().size();
  if (sources) sources->clear();
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_dim(points[i], set.dim_, "point");
    const auto hit = set.find(points[i], tau_eq);
    if (hit) {
      if (sources) (*sources)[*hit].push_back(i);
      continue;
    }
    set.points_.push_back(points[i]);
    if (sources) sources->push_back({i});
  }
  return set;
}

std::optional<std::size_t> PointSet::find(const Vec& y, double tau) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if ((points_[i] - y).norm() <= tau) return i;
  }
  return std::nullopt;
}

namespace {

void check_dims(const PointSet& a, const PointSet& b, const ConeContext& ctx) {
  if (a.dim() != ctx.dim() || b.dim() != ctx.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point sets and cone disagree on dimension");
  }
}

bool in_cone(const ConeContext& ctx, const Vec& y, bool strict, double tau) {
  const Membership m = ctx.classify(y, tau);
  return strict ? m == Membership::Interior : m != Membership::Outside;
}

// Every `covered` point c has some `cover` point v with sign * (c - v) in K.
bool covers(const PointSet& cover, const PointSet& covered, const ConeContext& ctx, double sign,
            bool strict, double tau) {
  for (const Vec& c : covered) {
    bool found = false;
    for (const Vec& v : cover) {
      if (in_cone(ctx, sign * (c - v), strict, tau)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool lower_less(const PointSet& a, const PointSet& b, const ConeContext& ctx, bool strict,
                double tau_mem) {
  check_dims(a, b, ctx);
  return covers(a, b, ctx, 1.0, strict, tau_mem);
}

bool upper_less(const PointSet& a, const PointSet& b, const ConeContext& ctx, bool strict,
                double tau_mem) {
  check_dims(a, b, ctx);
  // a in b - K  <=>  b - a in K
  return covers(b, a, ctx, -1.0, strict, tau_mem);
}

bool set_equivalent(const PointSet& a, const PointSet& b, const ConeContext& ctx,
                    SetRelation r, double tau_mem) {
  if (r == SetRelation::Lower) {
    return lower_less(a, b, ctx, false, tau_mem) && lower_less(b, a, ctx, false, tau_mem);
  }
  return upper_less(a, b, ctx, false, tau_mem) && upper_less(b, a, ctx, false, tau_mem);
}

std::vector<std::size_t> extremal_indices(const PointSet& a, const ConeContext& ctx,
                                          ElementKind kind, double tau_mem) {
  if (a.dim() != ctx.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point set and cone disagree on dimension");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < a.size() && keep; ++j) {
      const Vec below = a[i] - a[j];  // in K  <=>  a[j] <=_K a[i]
      switch (kind) {
        case ElementKind::WMin:
          keep = ctx.classify(below, tau_mem) != Membership::Interior;
          break;
        case ElementKind::Min:
          keep = j == i || ctx.classify(below, tau_mem) == Membership::Outside;
          break;
        case ElementKind::WMax:
          keep = ctx.classify(-below, tau_mem) != Membership::Interior;
          break;
        case ElementKind::Max:
          keep = j == i || ctx.classify(-below, tau_mem) == Membership::Outside;
          break;
        case ElementKind::SMin:
          keep = ctx.classify(-below, tau_mem) != Membership::Outside;
          break;
      }
    }
    if (keep) out.push_back(i);
  }
  return out;
}

std::vector<Vec> minimal_elements(const PointSet& a, const ConeContext& ctx, ElementKind kind,
                                  double tau_mem) {
  std::vector<Vec> out;
  for (std::size_t i : extremal_indices(a, ctx, kind, tau_mem)) out.push_back(a[i]);
  return out;
}

double scalar_gap(const PointSet& a, const PointSet& b, const ConeContext& ctx, SetRelation r) {
  check_dims(a, b, ctx);
  const PointSet& outer = r == SetRelation::Lower ? b : a;
  const PointSet& inner = r == SetRelation::Lower ? a : b;
  double sup = -std::numeric_limits<double>::infinity();
  for (const Vec& o : outer) {
    double inf = std::numeric_limits<double>::infinity();
    for (const Vec& i : inner) {
      const Vec diff = r == SetRelation::Lower ? Vec(i - o) : Vec(o - i);
      inf = std::min(inf, psi(ctx, diff));
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

}  // namespace setopt
