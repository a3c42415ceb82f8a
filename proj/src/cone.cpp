#include "setopt/cone.hpp"

#include <Eigen/QR>

namespace setopt {

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "Unknown";
}

ConeContext ConeContext::build(std::span<const Vec> dual_generators, const Vec& e,
                               double tau_eq) {
  if (dual_generators.empty()) {
    throw Error(ErrorCode::EmptyGenerators, "cone needs at least one dual generator");
  }
  const Eigen::Index m = e.size();
  if (m < 1) throw Error(ErrorCode::DimensionMismatch, "cone dimension must be >= 1");
  for (const Vec& d : dual_generators) require_dim(d, m, "dual generator");

  ConeContext ctx;
  ctx.e_ = e;
  const double e_norm = e.norm();
  for (std::size_t j = 0; j < dual_generators.size(); ++j) {
    const Vec& d = dual_generators[j];
    const double de = d.dot(e);
    if (!(de > tau_eq * d.norm() * e_norm) || d.norm() == 0.0) {
      throw Error(ErrorCode::EnotInterior,
                  "<d_" + std::to_string(j + 1) + ", e> = " + std::to_string(de) +
                      " is not positive; e must lie in int K");
    }
    Vec w = d / de;
    bool duplicate = false;
    for (const Vec& seen : ctx.normalized_) {
      if ((seen - w).norm() <= tau_eq * std::max(1.0, w.norm())) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    ctx.dual_.push_back(d);
    ctx.normalized_.push_back(std::move(w));
  }

  Mat stacked(static_cast<Eigen::Index>(ctx.dual_.size()), m);
  for (std::size_t j = 0; j < ctx.dual_.size(); ++j) {
    stacked.row(static_cast<Eigen::Index>(j)) = ctx.dual_[j].normalized().transpose();
  }
  Eigen::ColPivHouseholderQR<Mat> qr(stacked);
  qr.setThreshold(1e-10);
  if (qr.rank() < m) {
    throw Error(ErrorCode::NotPointed, "dual generators span a subspace of dimension " +
                                           std::to_string(qr.rank()) + " < " +
                                           std::to_string(m));
  }

  for (const Vec& w : ctx.normalized_) ctx.rho_ = std::max(ctx.rho_, w.norm());
  return ctx;
}

ConeContext ConeContext::orthant(Eigen::Index m) {
  std::vector<Vec> gens;
  gens.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) gens.push_back(Vec::Unit(m, i));
  return build(gens, Vec::Ones(m));
}

double ConeContext::margin(const Vec& y) const {
  require_dim(y, dim(), "point");
  double lo = std::numeric_limits<double>::infinity();
  for (const Vec& d : dual_) lo = std::min(lo, d.dot(y));
  return lo;
}

Membership ConeContext::classify(const Vec& y, double tau_mem) const {
  const double mg = margin(y);
  if (mg > tau_mem) return Membership::Interior;
  if (mg < -tau_mem) return Membership::Outside;
  return Membership::Boundary;
}

}  // namespace setopt
