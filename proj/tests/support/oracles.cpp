#include "oracles.hpp"

#include <cmath>
#include <limits>

namespace oracle {

RawCone random_cone(Eigen::Index m, Rng& rng, int extra) {
  for (;;) {
    RawCone k;
    k.e = Vec::Ones(m);
    for (Eigen::Index i = 0; i < m; ++i) k.e[i] += rng.uniform(-0.5, 0.5);
    const Vec axis = k.e.normalized();
    const auto q = static_cast<int>(m) + extra;
    for (int j = 0; j < q; ++j) {
      // Tilt the axis by a bounded random amount so <d, e> stays positive.
      Vec d = axis + 0.9 * rng.unit_direction(m);
      if (d.dot(k.e) > 0.05 * d.norm() * k.e.norm()) k.dual.push_back(d);
    }
    if (static_cast<Eigen::Index>(k.dual.size()) < m) continue;
    Mat g(m, static_cast<Eigen::Index>(k.dual.size()));
    for (std::size_t j = 0; j < k.dual.size(); ++j) g.col(static_cast<Eigen::Index>(j)) = k.dual[j];
    Eigen::JacobiSVD<Mat> svd(g);
    if (svd.singularValues().minCoeff() > 1e-3) return k;
  }
}

double margin(const RawCone& k, const Vec& y) {
  double lo = std::numeric_limits<double>::infinity();
  for (const Vec& d : k.dual) lo = std::min(lo, d.dot(y));
  return lo;
}

bool in_cone(const RawCone& k, const Vec& y, double tol) { return margin(k, y) >= -tol; }
bool in_interior(const RawCone& k, const Vec& y, double tol) { return margin(k, y) > tol; }

double psi_bisection(const RawCone& k, const Vec& y, double tol) {
  // t e - y in K holds for all large t and fails for all very negative t.
  double hi = 1.0;
  while (margin(k, hi * k.e - y) < 0.0) hi *= 2.0;
  double lo = -1.0;
  while (margin(k, lo * k.e - y) >= 0.0) lo *= 2.0;
  while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (margin(k, mid * k.e - y) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

bool lower_brute(const std::vector<Vec>& a, const std::vector<Vec>& b, const RawCone& k, bool strict) {
  for (const Vec& y : b) {
    bool covered = false;
    for (const Vec& x : a) {
      covered = covered || (strict ? in_interior(k, y - x) : in_cone(k, y - x));
    }
    if (!covered) return false;
  }
  return true;
}

bool upper_brute(const std::vector<Vec>& a, const std::vector<Vec>& b, const RawCone& k, bool strict) {
  for (const Vec& x : a) {
    bool covered = false;
    for (const Vec& y : b) {
      covered = covered || (strict ? in_interior(k, y - x) : in_cone(k, y - x));
    }
    if (!covered) return false;
  }
  return true;
}

std::vector<std::size_t> weak_extremal_brute(const std::vector<Vec>& a, const RawCone& k, int sign) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
      dominated = dominated || in_interior(k, sign * (a[i] - a[j]));
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

namespace {

// Affine least-norm point of the vertices in `idx`, parametrized from the first one.
bool affine_candidate(const std::vector<Vec>& v, const std::vector<std::size_t>& idx, double* dist,
                      Vec* point) {
  const Vec& v0 = v[idx[0]];
  const Eigen::Index d = v0.size();
  if (idx.size() == 1) {
    *dist = v0.norm();
    *point = v0;
    return true;
  }
  Mat dm(d, static_cast<Eigen::Index>(idx.size() - 1));
  for (std::size_t s = 1; s < idx.size(); ++s) dm.col(static_cast<Eigen::Index>(s - 1)) = v[idx[s]] - v0;
  Eigen::JacobiSVD<Mat> svd(dm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  const Vec mu = svd.solve(-v0);
  const double lambda0 = 1.0 - mu.sum();
  if (lambda0 < -1e-12 || (mu.array() < -1e-12).any()) return false;
  *point = v0 + dm * mu;
  *dist = point->norm();
  return true;
}

}  // namespace

double min_norm_enumeration(const std::vector<Vec>& v, Vec* point) {
  const std::size_t k = v.size();
  const std::size_t d = static_cast<std::size_t>(v.front().size());
  const std::size_t max_size = std::min(k, d + 1);
  double best = std::numeric_limits<double>::infinity();
  Vec best_point;
  std::vector<std::size_t> idx;
  // Depth-first enumeration of increasing index tuples.
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) {
      double dist;
      Vec p;
      if (affine_candidate(v, idx, &dist, &p) && dist < best) {
        best = dist;
        best_point = p;
      }
    }
    if (idx.size() == max_size) return;
    for (std::size_t i = start; i < k; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  if (point) *point = best_point;
  return best;
}

std::vector<Vec> dense_hull_sample(const std::vector<Vec>& v, int count, Rng& rng) {
  std::vector<Vec> out(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) out.push_back(0.5 * (v[i] + v[j]));
  }
  for (int s = 0; s < count; ++s) {
    Vec p = Vec::Zero(v.front().size());
    double total = 0.0;
    for (const Vec& x : v) {
      const double w = -std::log(1.0 - rng.uniform());
      p += w * x;
      total += w;
    }
    out.push_back(p / total);
  }
  return out;
}

double min_norm_sampling(const std::vector<Vec>& v, int samples, Rng& rng) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& p : dense_hull_sample(v, samples, rng)) best = std::min(best, p.norm());
  return best;
}

double hull_hausdorff(const std::vector<Vec>& p, const std::vector<Vec>& q) {
  auto excess = [](const std::vector<Vec>& from, const std::vector<Vec>& to) {
    double worst = 0.0;
    for (const Vec& x : from) {
      std::vector<Vec> shifted;
      for (const Vec& y : to) shifted.push_back(y - x);
      worst = std::max(worst, min_norm_enumeration(shifted));
    }
    return worst;
  };
  return std::max(excess(p, q), excess(q, p));
}

double sample_hausdorff(const std::vector<Vec>& v, const std::vector<Vec>& samples) {
  double worst = 0.0;
  for (const Vec& s : samples) {
    std::vector<Vec> shifted;
    for (const Vec& y : v) shifted.push_back(y - s);
    worst = std::max(worst, min_norm_enumeration(shifted));
  }
  for (const Vec& x : v) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec& s : samples) nearest = std::min(nearest, (s - x).norm());
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace oracle
