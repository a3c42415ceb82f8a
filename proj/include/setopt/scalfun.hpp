#pragma once

#include <vector>

#include "setopt/setmap.hpp"

namespace setopt {

/// Value of an inner infimum together with its argmin (indices into the set
/// that was minimized over), ties kept within the active band.
struct InnerValue {
  double value = 0.0;
  std::vector<std::size_t> argmin;
};

/// inf_{y in image} psi(y - z): the lower inner function with F(x) already evaluated.
InnerValue lower_inner(const PointSet& image, const ConeContext& ctx, const Vec& z,
                       double tau_act = 1e-8);
/// inf_{ybar in anchor} psi(y - ybar): the upper inner function.
InnerValue upper_inner(const PointSet& anchor, const ConeContext& ctx, const Vec& y,
                       double tau_act = 1e-8);

/// g_l(x, z); argmin is the solution set S^{l,1}(x, z) as indices into F(x).
InnerValue g_lower(const SetMap& map, const ConeContext& ctx, const Vec& x, const Vec& z,
                   const Tolerances& tol = {});
/// g_{u,xbar}(y); argmin is S^{u,1}(y) as indices into F(xbar).
InnerValue g_upper(const SetMap& map, const ConeContext& ctx, const Vec& xbar, const Vec& y,
                   const Tolerances& tol = {});

struct ScalarizationResult {
  double value = 0.0;
  /// Lower: indices into F(xbar) attaining the sup (S^{l,2}). Upper: indices into F(x) (S^{u,2}).
  std::vector<std::size_t> outer_witnesses;
  /// Per outer witness, the inner argmin. Lower: into F(x). Upper: into F(xbar).
  std::vector<std::vector<std::size_t>> inner_witnesses;
  double tau_act = 0.0;
  Image anchor_image;  // F(xbar)
  Image image;         // F(x)
};

/// Sup-inf evaluation on already evaluated images.
ScalarizationResult scalarize_images(const Image& anchor_image, const Image& image,
                                     const ConeContext& ctx, SetRelation r,
                                     double tau_act = 1e-8);

/// f_{l,xbar}(x) = sup_{ybar in F(xbar)} inf_{y in F(x)} psi(y - ybar).
ScalarizationResult f_lower(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                            const Vec& x, const Tolerances& tol = {});
/// f_{u,xbar}(x) = sup_{y in F(x)} inf_{ybar in F(xbar)} psi(y - ybar).
ScalarizationResult f_upper(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                            const Vec& x, const Tolerances& tol = {});

ScalarizationResult f_relation(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                               const Vec& x, SetRelation r, const Tolerances& tol = {});

}  // namespace setopt
