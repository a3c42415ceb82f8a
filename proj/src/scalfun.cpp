#include "setopt/scalfun.hpp"

#include <limits>

#include "setopt/scalarize.hpp"

namespace setopt {

namespace {

// inf over `set` of psi(sign * (p - q)) where q is the fixed point.
InnerValue inner_min(const PointSet& set, const ConeContext& ctx, const Vec& fixed, double sign,
                     double tau_act) {
  require_dim(fixed, ctx.dim(), "point");
  std::vector<double> vals;
  vals.reserve(set.size());
  InnerValue out;
  out.value = std::numeric_limits<double>::infinity();
  for (const Vec& p : set) {
    vals.push_back(psi(ctx, sign * (p - fixed)));
    out.value = std::min(out.value, vals.back());
  }
  const double band = active_band(tau_act, out.value);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] <= out.value + band) out.argmin.push_back(i);
  }
  return out;
}

}  // namespace

InnerValue lower_inner(const PointSet& image, const ConeContext& ctx, const Vec& z,
                       double tau_act) {
  return inner_min(image, ctx, z, 1.0, tau_act);
}

InnerValue upper_inner(const PointSet& anchor, const ConeContext& ctx, const Vec& y,
                       double tau_act) {
  // psi(y - ybar) = psi(-(ybar - y))
  return inner_min(anchor, ctx, y, -1.0, tau_act);
}

InnerValue g_lower(const SetMap& map, const ConeContext& ctx, const Vec& x, const Vec& z,
                   const Tolerances& tol) {
  return lower_inner(map.evaluate(x, tol.eq).points, ctx, z, tol.act);
}

InnerValue g_upper(const SetMap& map, const ConeContext& ctx, const Vec& xbar, const Vec& y,
                   const Tolerances& tol) {
  return upper_inner(map.evaluate(xbar, tol.eq).points, ctx, y, tol.act);
}

ScalarizationResult scalarize_images(const Image& anchor_image, const Image& image,
                                     const ConeContext& ctx, SetRelation r, double tau_act) {
  if (anchor_image.points.dim() != ctx.dim() || image.points.dim() != ctx.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "images and cone disagree on dimension");
  }
  ScalarizationResult res;
  res.tau_act = tau_act;
  res.anchor_image = anchor_image;
  res.image = image;

  const PointSet& outer = r == SetRelation::Lower ? anchor_image.points : image.points;
  std::vector<InnerValue> inner;
  inner.reserve(outer.size());
  res.value = -std::numeric_limits<double>::infinity();
  for (const Vec& o : outer) {
    inner.push_back(r == SetRelation::Lower ? lower_inner(image.points, ctx, o, tau_act)
                                            : upper_inner(anchor_image.points, ctx, o, tau_act));
    res.value = std::max(res.value, inner.back().value);
  }
  const double band = active_band(tau_act, res.value);
  for (std::size_t k = 0; k < inner.size(); ++k) {
    if (inner[k].value >= res.value - band) {
      res.outer_witnesses.push_back(k);
      res.inner_witnesses.push_back(std::move(inner[k].argmin));
    }
  }
  return res;
}

ScalarizationResult f_relation(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                               const Vec& x, SetRelation r, const Tolerances& tol) {
  return scalarize_images(map.evaluate(xbar, tol.eq), map.evaluate(x, tol.eq), ctx, r, tol.act);
}

ScalarizationResult f_lower(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                            const Vec& x, const Tolerances& tol) {
  return f_relation(map, ctx, xbar, x, SetRelation::Lower, tol);
}

ScalarizationResult f_upper(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                            const Vec& x, const Tolerances& tol) {
  return f_relation(map, ctx, xbar, x, SetRelation::Upper, tol);
}

}  // namespace setopt
