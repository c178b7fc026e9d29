#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biflab/cubic.hpp"
#include "biflab/orbit_solver.hpp"

using namespace biflab;

namespace {

std::mt19937_64 rng(777321u);

CubicHenonMap random_map() {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> s(0, 1);
  return {s(rng) ? 1 : -1, u(rng), u(rng)};
}

double orbit_residual(const CubicHenonMap& map, const PeriodicOrbit& o) {
  double worst = 0.0;
  for (int i = 0; i < o.period(); ++i) {
    const PlanePoint next = apply(map, o.points[static_cast<size_t>(i)]);
    worst = std::max(worst, distance(next, o.points[static_cast<size_t>((i + 1) % o.period())]));
  }
  return worst;
}

}  // namespace

TEST_CASE("depressed cubic solver") {
  // y^3 - 3y + 2 = (y - 1)^2 (y + 2)
  const CubicRoots r = solve_depressed_cubic(-3.0, 2.0);
  REQUIRE(r.count == 2);
  CHECK(r.root[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(r.root[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.multiplicity[0] == 1);
  CHECK(r.multiplicity[1] == 2);

  const CubicRoots t = solve_depressed_cubic(0.0, 0.0);
  CHECK(t.count == 1);
  CHECK(t.multiplicity[0] == 3);

  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const double p = u(rng), q = u(rng);
    const CubicRoots rr = solve_depressed_cubic(p, q);
    REQUIRE(rr.count >= 1);
    int mult_total = 0;
    for (int k = 0; k < rr.count; ++k) {
      const double y = rr.root[static_cast<size_t>(k)];
      CHECK(std::abs(y * y * y + p * y + q) < 1e-9 * (1.0 + std::abs(y * y * y)));
      mult_total += rr.multiplicity[static_cast<size_t>(k)];
    }
    CHECK((mult_total == 1 || mult_total == 3));
  }
}

TEST_CASE("fixed points: double root on the fold curve") {
  const auto fps = fixed_points(CubicHenonMap(+1, 2.0, -1.0));
  REQUIRE(fps.size() == 2);
  CHECK(fps[0].points[0].y == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fps[0].trace == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(fps[0].stability == Stability::SaddlePlus);
  CHECK(fps[1].points[0].y == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fps[1].stability == Stability::ParabolicPlus);
}

TEST_CASE("fixed points: symmetric cubic at the origin") {
  const auto fps = fixed_points(CubicHenonMap(+1, 0.0, 0.0));
  REQUIRE(fps.size() == 3);
  const double s2 = std::sqrt(2.0);
  CHECK(fps[0].points[0].y == doctest::Approx(-s2).epsilon(1e-12));
  CHECK(fps[1].points[0].y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fps[2].points[0].y == doctest::Approx(s2).epsilon(1e-12));
  CHECK(fps[1].stability == Stability::Elliptic);
  REQUIRE(fps[1].rotation_angle.has_value());
  CHECK(*fps[1].rotation_angle == doctest::Approx(1.5707963267948966).epsilon(1e-12));
  CHECK(fps[0].trace == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(fps[2].trace == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("fixed points: simultaneous pi/2 pair of the minus map") {
  const auto fps = fixed_points(CubicHenonMap(-1, 0.0, 3.0));
  REQUIRE(fps.size() == 3);
  CHECK(fps[0].points[0].y == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fps[1].points[0].y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fps[2].points[0].y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fps[0].stability == Stability::Elliptic);
  CHECK(std::abs(fps[0].trace) < 1e-12);
  CHECK(fps[2].stability == Stability::Elliptic);
  CHECK(fps[1].trace == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fps[1].stability == Stability::SaddlePlus);
}

TEST_CASE("newton orbit solver: fixed point from a nearby seed") {
  const auto o = find_periodic_orbit(CubicHenonMap(+1, 0.0, 0.0), 1, {0.1, 0.1});
  REQUIRE(o.has_value());
  CHECK(norm(o->points[0]) < 1e-10);
  CHECK(o->stability == Stability::Elliptic);
}

TEST_CASE("newton orbit solver: parabolic 2-orbit at (0, -4)") {
  // Exact orbit {(-sqrt2, sqrt2), (sqrt2, -sqrt2)} with monodromy trace +2.
  const CubicHenonMap map(+1, 0.0, -4.0);
  std::optional<PeriodicOrbit> found;
  for (double x = -2.0; x <= 2.0 && !found; x += 0.25) {
    for (double y = -2.0; y <= 2.0; y += 0.25) {
      auto o = find_periodic_orbit(map, 2, {x, y});
      if (o && o->period() == 2) { found = o; break; }
    }
  }
  REQUIRE(found.has_value());
  CHECK(std::abs(found->trace - 2.0) < 1e-6);
  const double s2 = std::sqrt(2.0);
  const double d0 = distance(found->points[0], {-s2, s2});
  const double d1 = distance(found->points[0], {s2, -s2});
  CHECK(std::min(d0, d1) < 1e-8);
}

TEST_CASE("newton orbit solver: minimal period is reported") {
  // Period-4 request starting near a fixed point collapses to period 1.
  const auto o = find_periodic_orbit(CubicHenonMap(+1, 0.0, 0.0), 4, {0.05, -0.02});
  REQUIRE(o.has_value());
  CHECK(o->period() == 1);
}

TEST_CASE("newton orbit solver: escape gives not-found") {
  const auto o = find_periodic_orbit(CubicHenonMap(+1, 0.0, 0.0), 3, {50.0, 55.0});
  CHECK_FALSE(o.has_value());
}

TEST_CASE("symmetric orbits: elliptic symmetric 4-orbit of the island chain") {
  const CubicHenonMap map(+1, 0.7, -0.5);
  const auto orbits = find_symmetric_orbits(map, 4, -3.0, 3.0);
  bool found = false;
  for (const auto& o : orbits) {
    if (o.period() != 4) continue;
    CHECK(o.symmetric);
    int on_line = 0;
    for (const auto& p : o.points)
      if (std::abs(p.x - p.y) < 1e-7) ++on_line;
    CHECK(on_line == 2);
    if (o.stability == Stability::Elliptic) found = true;
  }
  CHECK(found);
}

TEST_CASE("symmetric orbits: no genuine 2-orbit at the origin parameters") {
  const auto orbits = find_symmetric_orbits(CubicHenonMap(+1, 0.0, 0.0), 2, -3.0, 3.0);
  for (const auto& o : orbits) CHECK(o.period() == 1);  // only the fixed points
}

TEST_CASE("symmetric orbits: reported sets are reversor-invariant") {
  const CubicHenonMap map(+1, 0.7, -0.5);
  for (const auto& o : find_symmetric_orbits(map, 2, -3.0, 3.0)) {
    for (const auto& p : o.points) {
      const PlanePoint mirrored = reversor(p);
      double best = 1e9;
      for (const auto& q : o.points) best = std::min(best, distance(mirrored, q));
      CHECK(best < 1e-10);
    }
  }
}

TEST_CASE("orbit invariants over random solves") {
  int solved = 0;
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> period_dist(1, 6);
  while (solved < 300) {
    const CubicHenonMap map = random_map();
    const int n = period_dist(rng);
    const auto o = find_periodic_orbit(map, n, {u(rng), u(rng)});
    if (!o) continue;
    ++solved;
    // residual, monodromy determinant, classification consistency
    CHECK(orbit_residual(map, *o) < 1e-10);
    CHECK(std::abs(o->det - 1.0) < 1e-10);
    CHECK(classify_orbit(o->trace, o->det) == o->stability);
    if (o->stability == Stability::Elliptic) {
      REQUIRE(o->rotation_angle.has_value());
      CHECK(2.0 * std::cos(*o->rotation_angle) == doctest::Approx(o->trace).epsilon(1e-12));
    }
    // conjugacy invariance: the mirrored point set is an orbit of f with the
    // same monodromy trace (reversibility).
    std::vector<PlanePoint> mirrored;
    for (auto it = o->points.rbegin(); it != o->points.rend(); ++it)
      mirrored.push_back(reversor(*it));
    const Mat2 m = monodromy(map, mirrored);
    CHECK(std::abs(m.trace() - o->trace) < 1e-9 * (1.0 + std::abs(o->trace)));
  }
}

TEST_CASE("scan: period doubling of the central fixed point at m2 = -2") {
  const auto family = [](double m2) { return CubicHenonMap(+1, 0.0, m2); };
  const auto res = scan_bifurcations(family, 1, -3.0, -1.0, 21);
  bool found = false;
  for (const auto& ev : res.events) {
    if (ev.kind == BifurcationKind::PeriodDoubling &&
        std::abs(ev.parameter_value + 2.0) < 1e-8)
      found = true;
  }
  CHECK(found);
}

TEST_CASE("scan: fold of fixed points at m1 = 2") {
  const auto family = [](double m1) { return CubicHenonMap(+1, m1, -1.0); };
  const auto res = scan_bifurcations(family, 1, 1.5, 2.5, 21);
  bool found = false;
  for (const auto& ev : res.events) {
    if (ev.kind == BifurcationKind::Fold && std::abs(ev.parameter_value - 2.0) < 1e-8)
      found = true;
  }
  CHECK(found);
}

TEST_CASE("scan: resonance crossings are reported") {
  // trace(m2) = m2 at the central fixed point for m1 = 0: hits -1 and 0.
  const auto family = [](double m2) { return CubicHenonMap(+1, 0.0, m2); };
  const auto res = scan_bifurcations(family, 1, -1.5, 0.5, 21);
  bool r13 = false, r14 = false;
  for (const auto& ev : res.events) {
    if (ev.kind == BifurcationKind::ResonanceOneThree && std::abs(ev.parameter_value + 1.0) < 1e-8)
      r13 = true;
    if (ev.kind == BifurcationKind::ResonanceOneFour && std::abs(ev.parameter_value) < 1e-8)
      r14 = true;
  }
  CHECK(r13);
  CHECK(r14);
}

TEST_CASE("scan input validation") {
  const auto family = [](double m1) { return CubicHenonMap(+1, m1, 0.0); };
  CHECK_THROWS_AS(scan_bifurcations(family, 1, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(find_periodic_orbit(CubicHenonMap(+1, 0, 0), 65, {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_symmetric_orbits(CubicHenonMap(+1, 0, 0), 3, -1, 1),
                  std::invalid_argument);
}
