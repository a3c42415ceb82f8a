#include "setopt/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace setopt {

std::string_view to_string(MinimalityNotion r) {
  switch (r) {
    case MinimalityNotion::Lower: return "lower";
    case MinimalityNotion::Upper: return "upper";
    case MinimalityNotion::VectorWeak: return "vector-weak";
  }
  return "unknown";
}

std::string_view to_string(OracleProperty p) {
  switch (p) {
    case OracleProperty::Minimality: return "minimality";
    case OracleProperty::Consistency: return "consistency";
    case OracleProperty::Convexity: return "convexity";
    case OracleProperty::Lipschitz: return "lipschitz";
    case OracleProperty::Invariance: return "invariance";
  }
  return "unknown";
}

namespace {

// Visits xbar + step * k for k in [-K, K]^n, first coordinate slowest. The
// visitor returns false to stop early.
long for_each_grid_point(const Vec& xbar, const Omega& omega, const GridOptions& grid,
                         double tau_mem, bool include_center,
                         const std::function<bool(const Vec&)>& visit) {
  const Eigen::Index n = xbar.size();
  if (n > grid.max_dim) {
    throw Error(ErrorCode::DimensionTooLarge,
                "grid checks are limited to n <= " + std::to_string(grid.max_dim));
  }
  if (!(grid.step > 0.0) || !(grid.radius >= grid.step)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs step > 0 and radius >= step");
  }
  const auto half = static_cast<long>(std::floor(grid.radius / grid.step + 1e-9));
  std::vector<long> k(static_cast<std::size_t>(n), -half);
  long visited = 0;
  Vec x(n);
  for (;;) {
    bool center = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      const long ki = k[static_cast<std::size_t>(i)];
      x[i] = xbar[i] + grid.step * static_cast<double>(ki);
      center = center && ki == 0;
    }
    if ((include_center || !center) && omega.contains(x, tau_mem)) {
      ++visited;
      if (!visit(center ? xbar : x)) return visited;
    }
    Eigen::Index i = n - 1;
    while (i >= 0 && k[static_cast<std::size_t>(i)] == half) {
      k[static_cast<std::size_t>(i)] = -half;
      --i;
    }
    if (i < 0) break;
    ++k[static_cast<std::size_t>(i)];
  }
  return visited;
}

bool strictly_below(const PointSet& fx, const PointSet& fxbar, const ConeContext& ctx,
                    SetRelation r, double tau_mem) {
  return r == SetRelation::Lower ? lower_less(fx, fxbar, ctx, true, tau_mem)
                                 : upper_less(fx, fxbar, ctx, true, tau_mem);
}

bool dominates(const PointSet& fx, const Vec& ybar, const ConeContext& ctx, double tau_mem) {
  for (const Vec& y : fx) {
    if (ctx.classify(ybar - y, tau_mem) == Membership::Interior) return true;
  }
  return false;
}

std::string describe(const Vec& x) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(x[i]);
  }
  return s + "]";
}

bool all_affine(const SetMap& map) {
  for (const auto& comp : map.components()) {
    for (const Expression& e : comp) {
      if (!e.affine()) return false;
    }
  }
  return true;
}

}  // namespace

GridVerdict local_weak_minimality_grid(const SetMap& map, const ConeContext& ctx,
                                       const Vec& xbar, const Omega& omega,
                                       MinimalityNotion notion, const GridOptions& grid,
                                       const Tolerances& tol) {
  require_dim(xbar, map.n(), "xbar");
  const PointSet anchor = map.evaluate(xbar, tol.eq).points;
  GridVerdict v;
  v.property = OracleProperty::Minimality;
  v.notion = notion;
  v.center = xbar;
  v.radius = grid.radius;
  v.step = grid.step;

  if (notion != MinimalityNotion::VectorWeak) {
    const SetRelation r = notion == MinimalityNotion::Lower ? SetRelation::Lower : SetRelation::Upper;
    v.samples_checked = for_each_grid_point(xbar, omega, grid, tol.mem, false, [&](const Vec& x) {
      if (!strictly_below(map.evaluate(x, tol.eq).points, anchor, ctx, r, tol.mem)) return true;
      v.holds = false;
      v.counterexample = Counterexample{
          {x}, "F(x) is strictly " + std::string(to_string(r)) + "-below F(xbar) at x = " + describe(x),
          f_relation(map, ctx, xbar, x, r, tol).value};
      return false;
    });
    return v;
  }

  // Vector notion: the neighbourhood image includes F(xbar) itself.
  std::vector<std::optional<Vec>> hit(anchor.size());
  std::size_t open = anchor.size();
  v.samples_checked = for_each_grid_point(xbar, omega, grid, tol.mem, true, [&](const Vec& x) {
    const PointSet fx = map.evaluate(x, tol.eq).points;
    for (std::size_t j = 0; j < anchor.size(); ++j) {
      if (!hit[j] && dominates(fx, anchor[j], ctx, tol.mem)) {
        hit[j] = x;
        --open;
      }
    }
    return open > 0;
  });
  if (open == 0) {
    v.holds = false;
    Counterexample cex;
    for (std::size_t j = 0; j < anchor.size(); ++j) {
      cex.xs.push_back(*hit[j]);
      if (j) cex.evidence += "; ";
      cex.evidence += "anchor " + describe(anchor[j]) + " strictly dominated by F(" + describe(*hit[j]) + ")";
    }
    v.counterexample = std::move(cex);
  }
  return v;
}

bool replay_counterexample(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                           MinimalityNotion notion, const Counterexample& cex,
                           const Tolerances& tol) {
  const PointSet anchor = map.evaluate(xbar, tol.eq).points;
  if (notion == MinimalityNotion::VectorWeak) {
    if (cex.xs.size() != anchor.size()) return false;
    for (std::size_t j = 0; j < anchor.size(); ++j) {
      if (!dominates(map.evaluate(cex.xs[j], tol.eq).points, anchor[j], ctx, tol.mem)) return false;
    }
    return true;
  }
  if (cex.xs.size() != 1) return false;
  const SetRelation r = notion == MinimalityNotion::Lower ? SetRelation::Lower : SetRelation::Upper;
  return strictly_below(map.evaluate(cex.xs[0], tol.eq).points, anchor, ctx, r, tol.mem);
}

bool extremal_cross_check(const PointSet& a, const ConeContext& ctx, ElementKind kind,
                          const Tolerances& tol) {
  if (kind != ElementKind::WMin && kind != ElementKind::WMax) {
    throw Error(ErrorCode::InvalidArgument, "cross check covers WMin and WMax only");
  }
  std::vector<std::size_t> zero_level;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const InnerValue g = kind == ElementKind::WMin ? lower_inner(a, ctx, a[i], tol.act)
                                                   : upper_inner(a, ctx, a[i], tol.act);
    if (g.value >= -tol.mem) zero_level.push_back(i);
  }
  return zero_level == extremal_indices(a, ctx, kind, tol.mem);
}

bool wmin_cross_check(const PointSet& a, const ConeContext& ctx, const Tolerances& tol) {
  return extremal_cross_check(a, ctx, ElementKind::WMin, tol);
}

GridVerdict scalarization_consistency(const SetMap& map, const ConeContext& ctx,
                                      const Vec& xbar, const Omega& omega, SetRelation r,
                                      const GridOptions& grid, const Tolerances& tol) {
  require_dim(xbar, map.n(), "xbar");
  const Image anchor = map.evaluate(xbar, tol.eq);
  GridVerdict v;
  v.property = OracleProperty::Consistency;
  v.notion = r == SetRelation::Lower ? MinimalityNotion::Lower : MinimalityNotion::Upper;
  v.center = xbar;
  v.radius = grid.radius;
  v.step = grid.step;
  v.samples_checked = for_each_grid_point(xbar, omega, grid, tol.mem, false, [&](const Vec& x) {
    const Image image = map.evaluate(x, tol.eq);
    const double f = scalarize_images(anchor, image, ctx, r, tol.act).value;
    const bool below = strictly_below(image.points, anchor.points, ctx, r, tol.mem);
    if ((f < -tol.mem) == below) return true;
    v.holds = false;
    v.counterexample = Counterexample{
        {x},
        std::string(below ? "strict relation holds but f >= -tau" : "f < -tau without strict relation") +
            " at x = " + describe(x),
        f};
    return false;
  });
  return v;
}

GridVerdict sample_convexity(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                             double radius, int trials, std::uint64_t seed,
                             const Tolerances& tol) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  require_dim(xbar, map.n(), "xbar");
  GridVerdict v;
  v.property = OracleProperty::Convexity;
  v.center = xbar;
  v.radius = radius;
  v.hypothesis_verified = map.size() == 1 && all_affine(map);
  Rng rng(seed);
  auto f = [&](const Vec& x) { return f_lower(map, ctx, xbar, x, tol).value; };
  for (int t = 0; t < trials; ++t) {
    const Vec a = rng.in_ball(xbar, radius);
    const Vec b = rng.in_ball(xbar, radius);
    const double excess = f(0.5 * (a + b)) - 0.5 * (f(a) + f(b));
    ++v.samples_checked;
    if (excess > 1e-10 && v.holds) {
      v.holds = false;
      v.counterexample = Counterexample{{a, b}, "midpoint value exceeds the chord average", excess};
    }
  }
  return v;
}

LipschitzReport sample_lipschitz_bound(const SetMap& map, const ConeContext& ctx,
                                       const Vec& xbar, double radius, int trials,
                                       std::uint64_t seed, const Tolerances& tol) {
  if (trials < 2) throw Error(ErrorCode::InvalidArgument, "trials must be >= 2");
  LipschitzReport rep;
  rep.trials = trials;
  rep.rho = ctx.rho();
  rep.lipschitz_estimate = estimate_lipschitz(map, xbar, radius, trials, seed);
  rep.bound = rep.rho * (1.0 + rep.lipschitz_estimate);
  // Same stream as the modulus estimate, so both see identical pairs.
  Rng rng(seed);
  std::vector<Vec> xs;
  std::vector<double> fs;
  for (int s = 0; s < trials; ++s) {
    xs.push_back(rng.in_ball(xbar, radius));
    fs.push_back(f_lower(map, ctx, xbar, xs.back(), tol).value);
  }
  for (int i = 0; i < trials; ++i) {
    for (int j = 0; j < i; ++j) {
      const double dx = (xs[i] - xs[j]).norm();
      if (dx > 0.0) rep.quotient_max = std::max(rep.quotient_max, std::abs(fs[i] - fs[j]) / dx);
    }
  }
  rep.holds = rep.quotient_max <= rep.bound * 1.05;
  return rep;
}

InvarianceReport invariance_check(const SetMap& map, const ConeContext& ctx, const Vec& xbar,
                                  const Vec& k, int probes, std::uint64_t seed, double radius,
                                  const Tolerances& tol) {
  require_dim(k, ctx.dim(), "k");
  if (ctx.classify(k, tol.mem) == Membership::Outside) {
    throw Error(ErrorCode::InvalidArgument, "augmentation shift must lie in K");
  }
  const SetMap plus = map.augmented(k, 1.0);
  const SetMap minus = map.augmented(k, -1.0);
  const PointSet anchor = map.evaluate(xbar, tol.eq).points;
  Rng rng(seed);
  InvarianceReport rep;
  rep.probes = probes;
  auto compare = [&](double a, double b) {
    const double dev = std::abs(a - b);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > 1e-12 * std::max(1.0, std::abs(a))) rep.holds = false;
  };
  for (int p = 0; p < probes; ++p) {
    const Vec x = rng.in_ball(xbar, radius);
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(anchor.size()));
    const Vec z = rng.in_ball(anchor[std::min(j, anchor.size() - 1)], 1.0);
    compare(f_lower(map, ctx, xbar, x, tol).value, f_lower(plus, ctx, xbar, x, tol).value);
    compare(g_lower(map, ctx, x, z, tol).value, g_lower(plus, ctx, x, z, tol).value);
    compare(f_upper(map, ctx, xbar, x, tol).value, f_upper(minus, ctx, xbar, x, tol).value);
    compare(g_upper(map, ctx, xbar, z, tol).value, g_upper(minus, ctx, xbar, z, tol).value);
  }
  return rep;
}

}  // namespace setopt
