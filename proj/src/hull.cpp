#include "setopt/hull.hpp"

#include <limits>
#include <optional>

namespace setopt {

namespace {

struct Element {
  bool is_ray;
  std::size_t index;
};

// Minimizer of |A alpha| over {alpha : sum of point weights = 1}, rays free.
Vec affine_minimizer(const Mat& a, const std::vector<Element>& corral) {
  const auto s = static_cast<Eigen::Index>(corral.size());
  Mat kkt = Mat::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = a.transpose() * a;
  for (Eigen::Index i = 0; i < s; ++i) {
    const double c = corral[static_cast<std::size_t>(i)].is_ray ? 0.0 : 1.0;
    kkt(i, s) = c;
    kkt(s, i) = c;
  }
  Vec rhs = Vec::Zero(s + 1);
  rhs[s] = 1.0;
  const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(s);
}

}  // namespace

MinNormResult min_norm_point(std::span<const Vec> vertices, double tol, int max_iterations) {
  return min_norm_point(vertices, std::span<const Vec>{}, tol, max_iterations);
}

MinNormResult min_norm_point(std::span<const Vec> vertices, std::span<const Vec> rays,
                             double tol, int max_iterations) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex list");
  const Eigen::Index d = vertices.front().size();
  for (const Vec& v : vertices) require_dim(v, d, "vertex");
  for (const Vec& r : rays) require_dim(r, d, "ray");
  if (max_iterations <= 0) {
    max_iterations = 100 + 20 * static_cast<int>(vertices.size() + rays.size() + d);
  }

  double scale = 1.0;
  for (const Vec& v : vertices) scale = std::max(scale, v.norm());
  const double point_gap_tol = tol * scale * scale;
  const double ray_gap_tol = tol * scale;

  auto element = [&](const Element& e) -> const Vec& {
    return e.is_ray ? rays[e.index] : vertices[e.index];
  };

  std::size_t start = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i].squaredNorm() < vertices[start].squaredNorm()) start = i;
  }
  std::vector<Element> corral{{false, start}};
  std::vector<double> weight{1.0};

  auto current_point = [&] {
    Vec x = Vec::Zero(d);
    for (std::size_t s = 0; s < corral.size(); ++s) x += weight[s] * element(corral[s]);
    return x;
  };
  auto in_corral = [&](bool is_ray, std::size_t idx) {
    for (const Element& e : corral) {
      if (e.is_ray == is_ray && e.index == idx) return true;
    }
    return false;
  };

  Vec x = current_point();
  int iter = 0;
  bool converged = false;
  while (iter < max_iterations) {
    ++iter;
    const double xx = x.squaredNorm();
    if (std::sqrt(xx) <= tol * scale) {
      converged = true;
      break;
    }
    // Most violated optimality condition outside the corral.
    double worst = 0.0;
    std::optional<Element> entering;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const double gap = x.dot(vertices[i]) - xx;
      if (gap < -point_gap_tol && gap < worst && !in_corral(false, i)) {
        worst = gap;
        entering = Element{false, i};
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const double gap = x.dot(rays[i]);
      // compare on the point scale so that rays and points compete fairly
      if (gap < -ray_gap_tol && gap * scale < worst && !in_corral(true, i)) {
        worst = gap * scale;
        entering = Element{true, i};
      }
    }
    if (!entering) {
      converged = true;
      break;
    }
    corral.push_back(*entering);
    weight.push_back(0.0);

    // Minor cycle: move toward the affine minimizer while staying feasible.
    for (;;) {
      ++iter;
      Mat a(d, static_cast<Eigen::Index>(corral.size()));
      for (std::size_t s = 0; s < corral.size(); ++s) {
        a.col(static_cast<Eigen::Index>(s)) = element(corral[s]);
      }
      const Vec alpha = affine_minimizer(a, corral);
      constexpr double kPositive = 1e-15;
      bool interior = true;
      for (Eigen::Index s = 0; s < alpha.size(); ++s) {
        if (alpha[s] <= kPositive) interior = false;
      }
      if (interior) {
        for (std::size_t s = 0; s < corral.size(); ++s) weight[s] = alpha[static_cast<Eigen::Index>(s)];
        break;
      }
      double theta = 1.0;
      std::size_t blocking = corral.size();
      for (std::size_t s = 0; s < corral.size(); ++s) {
        const double as = alpha[static_cast<Eigen::Index>(s)];
        if (as <= kPositive && weight[s] - as > 0.0) {
          const double t = weight[s] / (weight[s] - as);
          if (t < theta) {
            theta = t;
            blocking = s;
          }
        }
      }
      for (std::size_t s = 0; s < corral.size(); ++s) {
        weight[s] = (1.0 - theta) * weight[s] + theta * alpha[static_cast<Eigen::Index>(s)];
      }
      if (blocking < corral.size()) weight[blocking] = 0.0;
      std::vector<Element> kept;
      std::vector<double> kept_w;
      for (std::size_t s = 0; s < corral.size(); ++s) {
        if (weight[s] > kPositive) {
          kept.push_back(corral[s]);
          kept_w.push_back(weight[s]);
        }
      }
      corral = std::move(kept);
      weight = std::move(kept_w);
      if (iter >= max_iterations) break;
    }
    x = current_point();
  }
  if (!converged) {
    throw Error(ErrorCode::ToleranceNotReached,
                "min-norm point did not converge in " + std::to_string(max_iterations) +
                    " iterations");
  }

  MinNormResult res;
  res.iterations = iter;
  res.lambda = Vec::Zero(static_cast<Eigen::Index>(vertices.size()));
  res.ray_weights = Vec::Zero(static_cast<Eigen::Index>(rays.size()));
  for (std::size_t s = 0; s < corral.size(); ++s) {
    const auto idx = static_cast<Eigen::Index>(corral[s].index);
    if (corral[s].is_ray) {
      res.ray_weights[idx] = std::max(0.0, weight[s]);
    } else {
      res.lambda[idx] = std::max(0.0, weight[s]);
    }
  }
  res.lambda /= res.lambda.sum();
  res.point = Vec::Zero(d);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    res.point += res.lambda[static_cast<Eigen::Index>(i)] * vertices[i];
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    res.point += res.ray_weights[static_cast<Eigen::Index>(i)] * rays[i];
  }
  res.distance = res.point.norm();
  return res;
}

MembershipCertificate contains_zero(std::span<const Vec> vertices,
                                    const NormalConeDescriptor& normal, double tau_stat) {
  if (normal.kind == NormalConeDescriptor::Kind::FullSpace) {
    throw Error(ErrorCode::InvalidArgument, "contains_zero expects a box-pattern normal cone");
  }
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex list");
  require_dim(vertices.front(), normal.dim, "vertex");
  const std::vector<Vec> rays = normal.rays();
  const MinNormResult mn = min_norm_point(vertices, rays);

  MembershipCertificate cert;
  cert.tau_stat = tau_stat;
  cert.coefficients = mn.lambda;
  cert.normal_part = Vec::Zero(normal.dim);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    cert.normal_part += mn.ray_weights[static_cast<Eigen::Index>(i)] * rays[i];
  }
  cert.residual = mn.distance;
  cert.decision = cert.residual <= tau_stat;
  cert.marginal = cert.residual > 0.1 * tau_stat && cert.residual <= 10.0 * tau_stat;
  if (!cert.decision) cert.separating_direction = mn.point / mn.distance;
  return cert;
}

LpFeasibility zero_in_hull_lp(std::span<const Vec> vertices, const NormalConeDescriptor& normal,
                              double tol) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex list");
  const Eigen::Index d = normal.dim;
  for (const Vec& v : vertices) require_dim(v, d, "vertex");
  const std::vector<Vec> rays = normal.rays();
  const auto k = static_cast<Eigen::Index>(vertices.size());
  const auto r = static_cast<Eigen::Index>(rays.size());
  const Eigen::Index rows = d + 1;
  const Eigen::Index cols = k + r;

  double scale = 1.0;
  for (const Vec& v : vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());

  // Tableau [A | I_artificial | b], last row holds phase-1 reduced costs.
  Mat t = Mat::Zero(rows + 1, cols + rows + 1);
  for (Eigen::Index j = 0; j < k; ++j) {
    t.block(0, j, d, 1) = vertices[static_cast<std::size_t>(j)] / scale;
    t(d, j) = 1.0;
  }
  for (Eigen::Index j = 0; j < r; ++j) t.block(0, k + j, d, 1) = rays[static_cast<std::size_t>(j)];
  t(d, cols + rows) = 1.0;
  for (Eigen::Index i = 0; i < rows; ++i) t(i, cols + i) = 1.0;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = cols + i;
  for (Eigen::Index j = 0; j < cols + rows + 1; ++j) {
    if (j >= cols && j < cols + rows) continue;
    t(rows, j) = -t.block(0, j, rows, 1).sum();
  }

  constexpr double kPivotEps = 1e-12;
  const int max_pivots = 5000;
  for (int it = 0; it < max_pivots; ++it) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols + rows; ++j) {
      if (t(rows, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (t(i, enter) > kPivotEps) {
        const double ratio = t(i, cols + rows) / t(i, enter);
        if (ratio < best - 1e-15 ||
            (ratio <= best + 1e-15 && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  LpFeasibility out;
  out.infeasibility = std::max(0.0, -t(rows, cols + rows));
  out.feasible = out.infeasibility <= tol;
  out.lambda = Vec::Zero(k);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index b = basis[static_cast<std::size_t>(i)];
    if (b < k) out.lambda[b] = t(i, cols + rows);
  }
  return out;
}

std::vector<Vec> project(std::span<const Vec> vertices, std::span<const Eigen::Index> coords) {
  std::vector<Vec> out;
  out.reserve(vertices.size());
  for (const Vec& v : vertices) {
    Vec p(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t c = 0; c < coords.size(); ++c) {
      if (coords[c] < 0 || coords[c] >= v.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "coordinate " + std::to_string(coords[c]) + " of a " +
                        std::to_string(v.size()) + "-vector");
      }
      p[static_cast<Eigen::Index>(c)] = v[coords[c]];
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Vec> linear_image(std::span<const Vec> vertices, const Mat& m) {
  std::vector<Vec> out;
  out.reserve(vertices.size());
  for (const Vec& v : vertices) {
    if (v.size() != m.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(m.cols()) +
                                                    " columns, vertex has " +
                                                    std::to_string(v.size()) + " entries");
    }
    out.push_back(m * v);
  }
  return out;
}

}  // namespace setopt
