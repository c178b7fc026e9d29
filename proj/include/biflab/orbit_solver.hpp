// Fixed points and n-periodic orbits of the cubic Henon maps: closed-form
// fixed points through the cubic, Newton solving on the n-th iterate,
// R-symmetric orbit search on the line x = y, and a one-parameter
// continuation scan that localizes bifurcation events by bisection.  The
// scan is the brute-force oracle used to validate every analytic curve.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "biflab/core_maps.hpp"

namespace biflab {

enum class Stability { SaddlePlus, SaddleMinus, Elliptic, ParabolicPlus, ParabolicMinus };

const char* to_string(Stability s);

struct PeriodicOrbit {
  std::vector<PlanePoint> points;  // ordered orbit, length = minimal period
  double trace = 0.0;              // trace of the monodromy over one period
  double det = 1.0;                // determinant of the monodromy (= j^n)
  Stability stability = Stability::Elliptic;
  std::optional<double> rotation_angle;  // phi in (0,pi), present iff Elliptic
  bool symmetric = false;                // some point on x = y within tolerance

  int period() const { return static_cast<int>(points.size()); }
};

enum class BifurcationKind { Fold, PeriodDoubling, Pitchfork, ResonanceOneThree, ResonanceOneFour };

const char* to_string(BifurcationKind k);

struct BifurcationEvent {
  double parameter_value = 0.0;
  BifurcationKind kind = BifurcationKind::Fold;
  int period = 1;
  std::optional<PeriodicOrbit> orbit_before;
  std::optional<PeriodicOrbit> orbit_after;
};

struct NewtonOptions {
  int max_iterations = 50;
  double residual_tol = 1e-12;
  double escape_norm = 1e6;
};

// Stability from monodromy trace and determinant.  For det == 1 this is the
// trace rule: |tr| < 2 elliptic, tr > 2 saddle-plus, tr < -2 saddle-minus,
// tr = +-2 within the parabolic band.
Stability classify_orbit(double trace, double det, double parabolic_band = 1e-6);

// Monodromy (product of differentials along the points, last applied first).
Mat2 monodromy(const CubicHenonMap& map, const std::vector<PlanePoint>& points);

// Builds the full orbit record from one point; returns nothing if the point
// does not close up to `residual_tol` under `period` applications.
std::optional<PeriodicOrbit> make_orbit(const CubicHenonMap& map, PlanePoint p, int period,
                                        double residual_tol = 1e-10);

// All real roots of nu*y^3 + (m2 - 2)*y + m1 = 0, each as a period-1 orbit
// at (y*, y*), sorted ascending in y*; double roots reported once with the
// parabolic class.  Requires j == 1.
std::vector<PeriodicOrbit> fixed_points(const CubicHenonMap& map);

// Newton on F(p) = f^n(p) - p with the full differential chain.  Reports the
// orbit at its minimal period.  Empty on divergence, escape or degenerate
// linearization (one damped retry is attempted first).
std::optional<PeriodicOrbit> find_periodic_orbit(const CubicHenonMap& map, int period,
                                                 PlanePoint seed, const NewtonOptions& opts = {});

// R-symmetric orbits of even period n: scans g(t) = (f^{n/2}(t,t))_x -
// (f^{n/2}(t,t))_y for sign changes on [t_lo, t_hi], refines by bisection to
// 1e-12 and reconstructs the orbits (reported at minimal period, deduplicated).
std::vector<PeriodicOrbit> find_symmetric_orbits(const CubicHenonMap& map, int period,
                                                 double t_lo, double t_hi, int grid_points = 10001);

// Grid-seeded Newton sweep; returns deduplicated orbits of exactly the given
// minimal period inside the box |x|,|y| <= half_width.
std::vector<PeriodicOrbit> find_orbits_grid(const CubicHenonMap& map, int period,
                                            double half_width, int grid_n);

using MapFamily = std::function<CubicHenonMap(double)>;

struct ScanOptions {
  bool symmetric_seeding = false;  // also seed branches from the x = y line scan
  double seed_half_width = 5.0;    // box for grid seeding (periods >= 2)
  int seed_grid = 40;
  double line_half_width = 3.0;    // interval for symmetric-line seeding
  double parameter_tol = 1e-10;    // bisection tolerance for event localization
  double match_distance = 0.5;     // continuation guard: max jump of a branch point
  int max_halvings = 10;           // sub-stepping before a branch counts as lost
};

struct ScanResult {
  std::vector<BifurcationEvent> events;   // ascending in parameter
  std::vector<std::string> warnings;      // lost branches etc.
};

// Tracks every orbit branch of the requested minimal period found at the
// start of the range by continuation and reports trace crossings of
// +2 (Pitchfork when the branch survives), -2 (PeriodDoubling),
// -1 (1:3 resonance), 0 (1:4 resonance) and branch annihilations near
// trace +2 (Fold).  lo > hi scans backwards.
ScanResult scan_bifurcations(const MapFamily& family, int period, double lo, double hi,
                             int steps, const ScanOptions& opts = {});

}  // namespace biflab
