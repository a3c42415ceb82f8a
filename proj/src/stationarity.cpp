#include "setopt/stationarity.hpp"

#include <limits>

namespace setopt {

std::string_view to_string(StationarityKind k) {
  switch (k) {
    case StationarityKind::Lower: return "lower";
    case StationarityKind::Upper: return "upper";
    case StationarityKind::Vector: return "vector";
  }
  return "unknown";
}

namespace {

Image checked_image(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                    const Omega& omega, const Tolerances& tol) {
  require_dim(xbar, map.n(), "xbar");
  if (omega.dim != map.n()) throw Error(ErrorCode::DimensionMismatch, "Omega has wrong dimension");
  if (!omega.contains(xbar, tol.mem)) throw Error(ErrorCode::NotInOmega, "xbar is not in Omega");
  if (ctx.dim() != map.m()) throw Error(ErrorCode::DimensionMismatch, "map and cone disagree on m");
  Image image = map.evaluate(xbar, tol.eq);
  require_no_collisions(image);
  return image;
}

void decide(StationarityCertificate& cert, const Omega& omega, const Vec& xbar,
            const Tolerances& tol) {
  cert.omega_normal = omega.normal_cone(xbar, tol.mem);
  for (const AnchorRecord& rec : cert.per_anchor) {
    cert.union_vertices.insert(cert.union_vertices.end(), rec.selection.vertices.begin(),
                               rec.selection.vertices.end());
  }
  cert.membership = contains_zero(cert.union_vertices, cert.omega_normal, tol.stat);
  cert.stationary = cert.membership.decision;
  cert.residual = cert.membership.residual;
}

}  // namespace

StationarityCertificate lower_stationarity(const SetMap& map, const ConeContext& ctx,
                                           const Vec& xbar, const Omega& omega,
                                           const Tolerances& tol) {
  const Image image = checked_image(map, ctx, xbar, omega, tol);
  StationarityCertificate cert;
  cert.relation = StationarityKind::Lower;
  for (std::size_t k : extremal_indices(image.points, ctx, ElementKind::WMin, tol.mem)) {
    GAssembly g = assemble_G(map, ctx, xbar, image.points[k], tol);
    cert.per_anchor.push_back(
        {g.anchor, g.component, image.points[k], std::move(g.g), std::move(g.a)});
  }
  decide(cert, omega, xbar, tol);
  return cert;
}

StationarityCertificate upper_stationarity(const SetMap& map, const ConeContext& ctx,
                                           const Vec& xbar, const Omega& omega,
                                           const Tolerances& tol) {
  const Image image = checked_image(map, ctx, xbar, omega, tol);
  StationarityCertificate cert;
  cert.relation = StationarityKind::Upper;
  for (std::size_t k : extremal_indices(image.points, ctx, ElementKind::WMax, tol.mem)) {
    HAssembly h = assemble_H_and_B(map, ctx, xbar, image.points[k], tol);
    cert.per_anchor.push_back(
        {h.anchor, h.component, image.points[k], std::move(h.h), std::move(h.b)});
  }
  decide(cert, omega, xbar, tol);
  return cert;
}

StationarityCertificate stationarity(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                                     const Omega& omega, SetRelation r, const Tolerances& tol) {
  return r == SetRelation::Lower ? lower_stationarity(map, ctx, xbar, omega, tol)
                                 : upper_stationarity(map, ctx, xbar, omega, tol);
}

VectorStationarity vector_stationarity(const SetMap& map, const ConeContext& ctx,
                                       const Vec& xbar, const Tolerances& tol) {
  require_dim(xbar, map.n(), "xbar");
  if (ctx.dim() != map.m()) throw Error(ErrorCode::DimensionMismatch, "map and cone disagree on m");
  require_no_collisions(map.evaluate(xbar, tol.eq));
  const std::vector<Vec>& w = ctx.normalized_generators();
  const NormalConeDescriptor none = NormalConeDescriptor::zero(map.n());

  VectorStationarity out;
  out.residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Mat jt = map.component_jacobian(i, xbar).transpose();
    const std::vector<Vec> images = linear_image(w, jt);
    const MembershipCertificate cert = contains_zero(images, none, tol.stat);
    out.component_residuals.push_back(cert.residual);
    out.residual = std::min(out.residual, cert.residual);
    if (cert.decision && !out.component) {
      out.component = i;
      out.witness = Vec::Zero(ctx.dim());
      for (std::size_t j = 0; j < w.size(); ++j) {
        out.witness += cert.coefficients[static_cast<Eigen::Index>(j)] * w[j];
      }
    }
  }
  out.stationary = out.component.has_value();
  return out;
}

}  // namespace setopt
