#include "setopt/normals.hpp"

#include <algorithm>

namespace setopt {

Omega Omega::free(Eigen::Index n) {
  Omega o;
  o.kind = Kind::Free;
  o.dim = n;
  return o;
}

Omega Omega::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size()) {
    throw Error(ErrorCode::DimensionMismatch, "box bounds have different lengths");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw Error(ErrorCode::InvalidArgument, "box lower bound exceeds upper bound");
    }
  }
  Omega o;
  o.kind = Kind::Box;
  o.dim = lower.size();
  o.lower = std::move(lower);
  o.upper = std::move(upper);
  return o;
}

bool Omega::contains(const Vec& x, double tau) const {
  require_dim(x, dim, "x");
  if (kind == Kind::Free) return true;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (x[i] < lower[i] - tau || x[i] > upper[i] + tau) return false;
  }
  return true;
}

Vec Omega::project(const Vec& x) const {
  require_dim(x, dim, "x");
  if (kind == Kind::Free) return x;
  return x.cwiseMax(lower).cwiseMin(upper);
}

NormalConeDescriptor Omega::normal_cone(const Vec& x, double tau) const {
  if (kind == Kind::Free) {
    require_dim(x, dim, "x");
    return NormalConeDescriptor::zero(dim);
  }
  return normal_cone_box(lower, upper, x, tau);
}

void require_no_collisions(const Image& image) {
  for (std::size_t k = 0; k < image.sources.size(); ++k) {
    if (image.sources[k].size() > 1) {
      throw Error(ErrorCode::CollidingComponents,
                  "components " + std::to_string(image.sources[k][0] + 1) + " and " +
                      std::to_string(image.sources[k][1] + 1) + " share a value");
    }
  }
}

namespace {

std::size_t component_at(const Image& image, const Vec& ybar, double tau_eq) {
  const auto k = image.points.find(ybar, tau_eq);
  if (!k) throw Error(ErrorCode::PointNotInSet, "point is not a value of F at xbar");
  if (image.sources[*k].size() > 1) {
    throw Error(ErrorCode::CollidingComponents,
                "components " + std::to_string(image.sources[*k][0] + 1) + " and " +
                    std::to_string(image.sources[*k][1] + 1) + " share the value");
  }
  return *k;
}

bool listed(const std::vector<std::size_t>& idx, std::size_t k) {
  return std::find(idx.begin(), idx.end(), k) != idx.end();
}

}  // namespace

Vec coderivative(const SetMap& map, const Vec& xbar, const Vec& ybar, const Vec& ystar,
                 double tau_eq) {
  require_dim(ystar, map.m(), "y*");
  const Image image = map.evaluate(xbar, tau_eq);
  const std::size_t k = component_at(image, ybar, tau_eq);
  return map.component_jacobian(image.sources[k][0], xbar).transpose() * ystar;
}

NormalConeDescriptor normal_cone_finite(const PointSet& a, const Vec& ybar, double tau_eq) {
  require_dim(ybar, a.dim(), "point");
  if (!a.find(ybar, tau_eq)) throw Error(ErrorCode::PointNotInSet, "point is not in the set");
  return NormalConeDescriptor::full_space(a.dim());
}

NormalConeDescriptor normal_cone_box(const Vec& lower, const Vec& upper, const Vec& x,
                                     double tau_mem) {
  if (lower.size() != upper.size()) {
    throw Error(ErrorCode::DimensionMismatch, "box bounds have different lengths");
  }
  require_dim(x, lower.size(), "x");
  std::vector<BoxFlag> flags(static_cast<std::size_t>(x.size()), BoxFlag::Zero);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] - tau_mem || x[i] > upper[i] + tau_mem) {
      throw Error(ErrorCode::PointNotInSet, "x lies outside the box");
    }
    const bool at_lower = x[i] <= lower[i] + tau_mem;
    const bool at_upper = x[i] >= upper[i] - tau_mem;
    BoxFlag& f = flags[static_cast<std::size_t>(i)];
    if (upper[i] - lower[i] <= tau_mem || (at_lower && at_upper)) {
      f = BoxFlag::All;
    } else if (at_upper) {
      f = BoxFlag::NonNeg;
    } else if (at_lower) {
      f = BoxFlag::NonPos;
    }
  }
  return NormalConeDescriptor::box(std::move(flags));
}

GAssembly assemble_G(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                     const Vec& ybar, const Tolerances& tol) {
  const Image image = map.evaluate(xbar, tol.eq);
  if (image.points.dim() != ctx.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map and cone disagree on m");
  }
  const std::size_t anchor = component_at(image, ybar, tol.eq);
  if (!listed(extremal_indices(image.points, ctx, ElementKind::WMin, tol.mem), anchor)) {
    throw Error(ErrorCode::NotWeaklyMinimal, "anchor is not weakly minimal in F(xbar)");
  }
  const Vec& y = image.points[anchor];
  const auto n = static_cast<Eigen::Index>(map.n());
  const Eigen::Index m = ctx.dim();

  GAssembly out;
  out.anchor = anchor;
  out.component = image.sources[anchor][0];
  for (std::size_t k = 0; k < image.points.size(); ++k) {
    const Vec& z = image.points[k];
    if (k != anchor && ctx.classify(y - z, tol.mem) != Membership::Boundary) continue;
    if (image.sources[k].size() > 1) {
      throw Error(ErrorCode::CollidingComponents, "components collide at a contributing value");
    }
    const Mat jt = map.component_jacobian(image.sources[k][0], xbar).transpose();
    const SubdifferentialFace face = psi_subdifferential(ctx, z - y, tol.act);
    for (std::size_t v = 0; v < face.vertices.size(); ++v) {
      const Vec& w = face.vertices[v];
      Vec g(n + m);
      g.head(n) = jt * w;
      g.tail(m) = -w;
      const Provenance prov{k, face.generator_indices[v]};
      out.g.vertices.push_back(g);
      out.g.provenance.push_back(prov);
      out.a.vertices.push_back(g.head(n));
      out.a.provenance.push_back(prov);
    }
  }
  return out;
}

HAssembly assemble_H_and_B(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                           const Vec& ybar, const Tolerances& tol) {
  const Image image = map.evaluate(xbar, tol.eq);
  if (image.points.dim() != ctx.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map and cone disagree on m");
  }
  const std::size_t anchor = component_at(image, ybar, tol.eq);
  if (!listed(extremal_indices(image.points, ctx, ElementKind::WMax, tol.mem), anchor)) {
    throw Error(ErrorCode::NotWeaklyMaximal, "anchor is not weakly maximal in F(xbar)");
  }
  const Vec& y = image.points[anchor];

  HAssembly out;
  out.anchor = anchor;
  out.component = image.sources[anchor][0];
  const Mat jt = map.component_jacobian(out.component, xbar).transpose();
  for (std::size_t k = 0; k < image.points.size(); ++k) {
    const Vec& z = image.points[k];
    if (k != anchor && ctx.classify(z - y, tol.mem) != Membership::Boundary) continue;
    // N(zbar, F(xbar)) is the full space, so the intersection is the face itself.
    const SubdifferentialFace face = psi_subdifferential(ctx, y - z, tol.act);
    for (std::size_t v = 0; v < face.vertices.size(); ++v) {
      const Vec& w = face.vertices[v];
      const Provenance prov{k, face.generator_indices[v]};
      out.h.vertices.push_back(-w);
      out.h.provenance.push_back(prov);
      // B = -J^T H, so each vertex is J^T w.
      out.b.vertices.push_back(jt * w);
      out.b.provenance.push_back(prov);
    }
  }
  return out;
}

}  // namespace setopt
