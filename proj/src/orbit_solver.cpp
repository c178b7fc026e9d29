#include "biflab/orbit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "biflab/cubic.hpp"

namespace biflab {

namespace {

constexpr double kOrbitResidualTol = 1e-10;
constexpr double kMinimalPeriodTol = 1e-9;
constexpr double kSymmetryLineTol = 1e-7;
constexpr double kOrbitDedupTol = 1e-7;

bool solve2(const Mat2& a, const PlanePoint& rhs, PlanePoint* out) {
  const double det = a.det();
  const double scale = std::max({std::abs(a.a11), std::abs(a.a12), std::abs(a.a21), std::abs(a.a22), 1.0});
  if (std::abs(det) < 1e-14 * scale * scale) return false;
  out->x = (rhs.x * a.a22 - rhs.y * a.a12) / det;
  out->y = (rhs.y * a.a11 - rhs.x * a.a21) / det;
  return true;
}

// Sorted copy of the orbit points, for order-independent comparison.
std::vector<PlanePoint> sorted_points(const PeriodicOrbit& o) {
  std::vector<PlanePoint> v = o.points;
  std::sort(v.begin(), v.end(), [](const PlanePoint& a, const PlanePoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return v;
}

bool same_orbit(const PeriodicOrbit& a, const PeriodicOrbit& b, double tol = kOrbitDedupTol) {
  if (a.period() != b.period()) return false;
  const auto pa = sorted_points(a);
  const auto pb = sorted_points(b);
  for (size_t i = 0; i < pa.size(); ++i)
    if (distance(pa[i], pb[i]) > tol) return false;
  return true;
}

void dedup_orbits(std::vector<PeriodicOrbit>* orbits) {
  std::sort(orbits->begin(), orbits->end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    if (a.period() != b.period()) return a.period() < b.period();
    const auto pa = sorted_points(a), pb = sorted_points(b);
    return pa[0].x != pb[0].x ? pa[0].x < pb[0].x : pa[0].y < pb[0].y;
  });
  std::vector<PeriodicOrbit> out;
  for (auto& o : *orbits) {
    bool dup = false;
    for (const auto& kept : out)
      if (same_orbit(kept, o)) { dup = true; break; }
    if (!dup) out.push_back(std::move(o));
  }
  *orbits = std::move(out);
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::SaddlePlus: return "saddle+";
    case Stability::SaddleMinus: return "saddle-";
    case Stability::Elliptic: return "elliptic";
    case Stability::ParabolicPlus: return "parabolic+";
    case Stability::ParabolicMinus: return "parabolic-";
  }
  return "?";
}

const char* to_string(BifurcationKind k) {
  switch (k) {
    case BifurcationKind::Fold: return "fold";
    case BifurcationKind::PeriodDoubling: return "period_doubling";
    case BifurcationKind::Pitchfork: return "pitchfork";
    case BifurcationKind::ResonanceOneThree: return "resonance_1_3";
    case BifurcationKind::ResonanceOneFour: return "resonance_1_4";
  }
  return "?";
}

Stability classify_orbit(double trace, double det, double parabolic_band) {
  if (std::abs(trace - 2.0) < parabolic_band) return Stability::ParabolicPlus;
  if (std::abs(trace + 2.0) < parabolic_band) return Stability::ParabolicMinus;
  const double disc = trace * trace - 4.0 * det;
  if (disc < 0.0) return Stability::Elliptic;
  return trace > 0.0 ? Stability::SaddlePlus : Stability::SaddleMinus;
}

Mat2 monodromy(const CubicHenonMap& map, const std::vector<PlanePoint>& points) {
  Mat2 m = Mat2::identity();
  for (const auto& p : points) m = differential(map, p) * m;
  return m;
}

std::optional<PeriodicOrbit> make_orbit(const CubicHenonMap& map, PlanePoint p, int period,
                                        double residual_tol) {
  if (period < 1) return std::nullopt;
  std::vector<PlanePoint> pts(static_cast<size_t>(period));
  PlanePoint q = p;
  for (int i = 0; i < period; ++i) {
    if (!is_finite(q)) return std::nullopt;
    pts[static_cast<size_t>(i)] = q;
    q = apply(map, q);
  }
  if (!is_finite(q) || distance(q, p) > residual_tol) return std::nullopt;

  // Minimal period: smallest divisor d of `period` with f^d(p) = p.
  int minimal = period;
  for (int d = 1; d < period; ++d) {
    if (period % d != 0) continue;
    bool closes = true;
    for (int i = 0; i < period && closes; ++i)
      closes = distance(pts[static_cast<size_t>(i)],
                        pts[static_cast<size_t>((i + d) % period)]) < kMinimalPeriodTol;
    if (closes) { minimal = d; break; }
  }
  pts.resize(static_cast<size_t>(minimal));

  PeriodicOrbit orbit;
  orbit.points = std::move(pts);
  const Mat2 m = monodromy(map, orbit.points);
  orbit.trace = m.trace();
  orbit.det = m.det();
  orbit.stability = classify_orbit(orbit.trace, orbit.det);
  if (orbit.stability == Stability::Elliptic)
    orbit.rotation_angle = std::acos(std::clamp(orbit.trace / 2.0, -1.0, 1.0));
  orbit.symmetric = false;
  for (const auto& pt : orbit.points)
    if (std::abs(pt.x - pt.y) < kSymmetryLineTol) { orbit.symmetric = true; break; }
  return orbit;
}

std::vector<PeriodicOrbit> fixed_points(const CubicHenonMap& map) {
  if (!map.conservative())
    throw std::invalid_argument("fixed_points: requires the conservative case j == 1");
  // x = y reduces the fixed-point condition to nu*y^3 + (m2 - 2)*y + m1 = 0.
  const double p = map.nu * (map.m2 - 2.0);
  const double q = map.nu * map.m1;
  const CubicRoots roots = solve_depressed_cubic(p, q);

  std::vector<PeriodicOrbit> out;
  for (int i = 0; i < roots.count; ++i) {
    const double y = roots.root[static_cast<size_t>(i)];
    PeriodicOrbit orbit;
    orbit.points = {PlanePoint{y, y}};
    const Mat2 m = differential(map, orbit.points[0]);
    orbit.trace = m.trace();
    orbit.det = m.det();
    if (roots.multiplicity[static_cast<size_t>(i)] >= 2) {
      orbit.stability = Stability::ParabolicPlus;  // root mergers happen at trace +2
    } else {
      orbit.stability = classify_orbit(orbit.trace, orbit.det);
    }
    if (orbit.stability == Stability::Elliptic)
      orbit.rotation_angle = std::acos(std::clamp(orbit.trace / 2.0, -1.0, 1.0));
    orbit.symmetric = true;
    out.push_back(std::move(orbit));
  }
  return out;
}

std::optional<PeriodicOrbit> find_periodic_orbit(const CubicHenonMap& map, int period,
                                                 PlanePoint seed, const NewtonOptions& opts) {
  if (period < 1 || period > 64)
    throw std::invalid_argument("find_periodic_orbit: period must be in [1, 64]");
  if (!is_finite(seed)) return std::nullopt;

  PlanePoint p = seed;
  bool damped_retry_used = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (!is_finite(p) || norm(p) > opts.escape_norm) return std::nullopt;

    PlanePoint q = p;
    Mat2 dfn = Mat2::identity();
    for (int i = 0; i < period; ++i) {
      dfn = differential(map, q) * dfn;
      q = apply(map, q);
      if (!is_finite(q) || norm(q) > opts.escape_norm) return std::nullopt;
    }
    const PlanePoint residual{q.x - p.x, q.y - p.y};
    if (std::hypot(residual.x, residual.y) < opts.residual_tol)
      return make_orbit(map, p, period, kOrbitResidualTol);

    const Mat2 jac{dfn.a11 - 1.0, dfn.a12, dfn.a21, dfn.a22 - 1.0};
    PlanePoint step;
    if (solve2(jac, {-residual.x, -residual.y}, &step)) {
      p.x += step.x;
      p.y += step.y;
    } else {
      if (damped_retry_used) return std::nullopt;
      damped_retry_used = true;
      // Regularized half step through the normal equations.
      const Mat2 jt{jac.a11, jac.a21, jac.a12, jac.a22};
      Mat2 n = jt * jac;
      const double mu = 1e-8 * (1.0 + n.a11 + n.a22);
      n.a11 += mu;
      n.a22 += mu;
      const PlanePoint g = jt * PlanePoint{-residual.x, -residual.y};
      if (!solve2(n, g, &step)) return std::nullopt;
      p.x += 0.5 * step.x;
      p.y += 0.5 * step.y;
    }
  }
  return std::nullopt;
}

std::vector<PeriodicOrbit> find_symmetric_orbits(const CubicHenonMap& map, int period,
                                                 double t_lo, double t_hi, int grid_points) {
  if (period < 2 || period % 2 != 0)
    throw std::invalid_argument("find_symmetric_orbits: period must be even and >= 2");
  if (!map.conservative())
    throw std::invalid_argument("find_symmetric_orbits: requires j == 1");
  if (grid_points < 2) throw std::invalid_argument("find_symmetric_orbits: grid too small");

  const int half = period / 2;
  // A point on x = y whose half-period image lands back on x = y closes up
  // into a periodic orbit of period dividing `period` (reversibility).
  const auto g = [&](double t) -> double {
    PlanePoint p{t, t};
    for (int i = 0; i < half; ++i) {
      p = apply(map, p);
      if (!is_finite(p) || norm(p) > 1e6) return std::numeric_limits<double>::quiet_NaN();
    }
    return p.x - p.y;
  };

  std::vector<double> zeros;
  double prev_t = t_lo;
  double prev_g = g(prev_t);
  for (int i = 1; i < grid_points; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / (grid_points - 1);
    const double gt = g(t);
    if (std::isfinite(prev_g) && std::isfinite(gt)) {
      if (prev_g == 0.0) {
        zeros.push_back(prev_t);
      } else if (prev_g * gt < 0.0) {
        double a = prev_t, b = t, ga = prev_g;
        while (b - a > 1e-12) {
          const double mid = 0.5 * (a + b);
          const double gm = g(mid);
          if (!std::isfinite(gm)) break;
          if (gm == 0.0) { a = b = mid; break; }
          if ((ga < 0.0) != (gm < 0.0)) b = mid; else { a = mid; ga = gm; }
        }
        zeros.push_back(0.5 * (a + b));
      }
    }
    prev_t = t;
    prev_g = gt;
  }
  if (std::isfinite(prev_g) && prev_g == 0.0) zeros.push_back(prev_t);

  std::vector<PeriodicOrbit> orbits;
  for (double t : zeros) {
    auto orbit = make_orbit(map, {t, t}, period, kOrbitResidualTol);
    if (orbit) orbits.push_back(std::move(*orbit));
  }
  dedup_orbits(&orbits);
  return orbits;
}

std::vector<PeriodicOrbit> find_orbits_grid(const CubicHenonMap& map, int period,
                                            double half_width, int grid_n) {
  std::vector<PeriodicOrbit> orbits;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double x = -half_width + 2.0 * half_width * (i + 0.5) / grid_n;
      const double y = -half_width + 2.0 * half_width * (j + 0.5) / grid_n;
      auto orbit = find_periodic_orbit(map, period, {x, y});
      if (orbit && orbit->period() == period &&
          std::abs(orbit->points[0].x) <= half_width && std::abs(orbit->points[0].y) <= half_width)
        orbits.push_back(std::move(*orbit));
    }
  }
  dedup_orbits(&orbits);
  return orbits;
}

namespace {

struct Branch {
  PeriodicOrbit orbit;
  bool alive = true;
};

// One continuation attempt: solve at parameter t seeded from `from`; the
// result must keep the minimal period and stay within the jump guard.
std::optional<PeriodicOrbit> continue_orbit(const MapFamily& family, double t,
                                            const PeriodicOrbit& from, int period,
                                            double match_distance) {
  auto orbit = find_periodic_orbit(family(t), period, from.points[0]);
  if (!orbit) return std::nullopt;
  if (orbit->period() != period) return std::nullopt;
  if (distance(orbit->points[0], from.points[0]) > match_distance) return std::nullopt;
  return orbit;
}

// Walk a branch from t_from to t_to with recursive step halving.  Appends
// intermediate (t, orbit) states to `path`.  Returns false when the branch
// could not be continued through some sub-interval.
bool walk(const MapFamily& family, int period, double match_distance, int halvings_left,
          double t_from, const PeriodicOrbit& from, double t_to,
          std::vector<std::pair<double, PeriodicOrbit>>* path) {
  auto next = continue_orbit(family, t_to, from, period, match_distance);
  if (next) {
    path->emplace_back(t_to, std::move(*next));
    return true;
  }
  if (halvings_left <= 0) return false;
  const double mid = 0.5 * (t_from + t_to);
  if (mid == t_from || mid == t_to) return false;
  if (!walk(family, period, match_distance, halvings_left - 1, t_from, from, mid, path))
    return false;
  const PeriodicOrbit& at_mid = path->back().second;
  return walk(family, period, match_distance, halvings_left - 1, mid, at_mid, t_to, path);
}

}  // namespace

ScanResult scan_bifurcations(const MapFamily& family, int period, double lo, double hi,
                             int steps, const ScanOptions& opts) {
  if (steps < 2) throw std::invalid_argument("scan_bifurcations: steps must be >= 2");
  ScanResult result;

  // Seed branches at the start of the range.
  std::vector<Branch> branches;
  {
    const CubicHenonMap start = family(lo);
    std::vector<PeriodicOrbit> seeds;
    if (period == 1) {
      seeds = fixed_points(start);
    } else {
      seeds = find_orbits_grid(start, period, opts.seed_half_width, opts.seed_grid);
      if (opts.symmetric_seeding && period % 2 == 0) {
        auto sym = find_symmetric_orbits(start, period, -opts.line_half_width, opts.line_half_width);
        for (auto& o : sym)
          if (o.period() == period) seeds.push_back(std::move(o));
        dedup_orbits(&seeds);
      }
    }
    for (auto& o : seeds)
      if (o.period() == period) branches.push_back(Branch{std::move(o), true});
  }

  const auto emit_crossing = [&](double ta, const PeriodicOrbit& oa, double tb,
                                 const PeriodicOrbit& ob, double level, BifurcationKind kind) {
    double a = ta, b = tb;
    PeriodicOrbit orbit_a = oa, orbit_b = ob;
    while (std::abs(b - a) > opts.parameter_tol) {
      const double mid = 0.5 * (a + b);
      const PeriodicOrbit& near_seed =
          std::abs(mid - a) <= std::abs(mid - b) ? orbit_a : orbit_b;
      auto om = continue_orbit(family, mid, near_seed, period, opts.match_distance);
      if (!om) {
        result.warnings.push_back("crossing refinement lost the branch near t=" + std::to_string(mid));
        break;
      }
      if (((orbit_a.trace - level) < 0.0) != ((om->trace - level) < 0.0)) {
        b = mid;
        orbit_b = std::move(*om);
      } else {
        a = mid;
        orbit_a = std::move(*om);
      }
    }
    BifurcationEvent ev;
    ev.parameter_value = 0.5 * (a + b);
    ev.kind = kind;
    ev.period = period;
    ev.orbit_before = orbit_a;
    ev.orbit_after = orbit_b;
    result.events.push_back(std::move(ev));
  };

  const auto emit_disappearance = [&](double t_good, const PeriodicOrbit& good, double t_bad) {
    double a = t_good, b = t_bad;
    PeriodicOrbit last = good;
    while (std::abs(b - a) > opts.parameter_tol) {
      const double mid = 0.5 * (a + b);
      auto om = continue_orbit(family, mid, last, period, opts.match_distance);
      if (om) {
        a = mid;
        last = std::move(*om);
      } else {
        b = mid;
      }
    }
    if (std::abs(last.trace - 2.0) < 0.1) {
      BifurcationEvent ev;
      ev.parameter_value = 0.5 * (a + b);
      ev.kind = BifurcationKind::Fold;
      ev.period = period;
      ev.orbit_before = last;
      result.events.push_back(std::move(ev));
    } else {
      std::ostringstream msg;
      msg << "branch lost near t=" << 0.5 * (a + b) << " with trace " << last.trace
          << " away from +2";
      result.warnings.push_back(msg.str());
    }
  };

  static constexpr double kLevels[] = {2.0, -2.0, -1.0, 0.0};
  static constexpr BifurcationKind kKinds[] = {
      BifurcationKind::Pitchfork, BifurcationKind::PeriodDoubling,
      BifurcationKind::ResonanceOneThree, BifurcationKind::ResonanceOneFour};

  for (int i = 0; i + 1 < steps; ++i) {
    const double t0 = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
    const double t1 = lo + (hi - lo) * static_cast<double>(i + 1) / (steps - 1);
    for (auto& branch : branches) {
      if (!branch.alive) continue;
      std::vector<std::pair<double, PeriodicOrbit>> path;
      path.emplace_back(t0, branch.orbit);
      if (!walk(family, period, opts.match_distance, opts.max_halvings, t0, branch.orbit, t1, &path)) {
        emit_disappearance(path.back().first, path.back().second, t1);
        branch.alive = false;
        continue;
      }
      for (size_t s = 0; s + 1 < path.size(); ++s) {
        const auto& [ta, oa] = path[s];
        const auto& [tb, ob] = path[s + 1];
        for (size_t c = 0; c < 4; ++c) {
          const double fa = oa.trace - kLevels[c];
          const double fb = ob.trace - kLevels[c];
          if (fa * fb < 0.0) emit_crossing(ta, oa, tb, ob, kLevels[c], kKinds[c]);
        }
      }
      branch.orbit = std::move(path.back().second);
    }
  }

  // Merge duplicate events (a fold is reported by both dying partners).
  std::sort(result.events.begin(), result.events.end(),
            [](const BifurcationEvent& a, const BifurcationEvent& b) {
              return a.parameter_value < b.parameter_value;
            });
  std::vector<BifurcationEvent> unique;
  for (auto& ev : result.events) {
    bool dup = false;
    for (const auto& kept : unique) {
      if (kept.kind != ev.kind || std::abs(kept.parameter_value - ev.parameter_value) > 1e-7)
        continue;
      if (kept.orbit_before && ev.orbit_before &&
          distance(kept.orbit_before->points[0], ev.orbit_before->points[0]) > 1e-3)
        continue;
      dup = true;
      break;
    }
    if (!dup) unique.push_back(std::move(ev));
  }
  result.events = std::move(unique);
  return result;
}

}  // namespace biflab
