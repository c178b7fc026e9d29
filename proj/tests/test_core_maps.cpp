#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "biflab/core_maps.hpp"

using namespace biflab;

namespace {

std::mt19937_64 rng(20240811u);

PlanePoint random_point(double box) {
  std::uniform_real_distribution<double> u(-box, box);
  return {u(rng), u(rng)};
}

CubicHenonMap random_map() {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> s(0, 1);
  return {s(rng) ? 1 : -1, u(rng), u(rng)};
}

}  // namespace

TEST_CASE("apply matches the defining formula") {
  CHECK(distance(apply({+1, 0.0, 0.0}, {0.0, 0.0}), {0.0, 0.0}) == 0.0);

  const PlanePoint q = apply({+1, 1.0, 2.0}, {1.0, 1.0});
  CHECK(q.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.y == doctest::Approx(3.0).epsilon(1e-15));

  // -y^3 + (m2 - 2) y + m1 = 0 at m2 = 3 has the root y = 1, so (1,1) is fixed.
  const PlanePoint f = apply({-1, 0.0, 3.0}, {1.0, 1.0});
  CHECK(f.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.y == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("invert is the exact inverse") {
  const CubicHenonMap m(+1, 0.3, -0.7);
  const PlanePoint p{0.1, 0.2};
  CHECK(distance(invert(m, apply(m, p)), p) < 1e-14);
  CHECK(distance(invert({+1, 0.0, 0.0}, {0.0, 0.0}), {0.0, 0.0}) == 0.0);
  CHECK(distance(invert({-1, 0.0, 3.0}, {1.0, 1.0}), {1.0, 1.0}) < 1e-15);
}

TEST_CASE("round trip at 1000 random points") {
  for (int i = 0; i < 1000; ++i) {
    const CubicHenonMap m = random_map();
    const PlanePoint p = random_point(5.0);
    CHECK(distance(invert(m, apply(m, p)), p) < 1e-13);
    CHECK(distance(apply(m, invert(m, p)), p) < 1e-13);
  }
}

TEST_CASE("differential: trace and exact determinant") {
  const CubicHenonMap a(+1, 0.4, -1.3);
  CHECK(differential(a, {2.0, 0.0}).trace() == doctest::Approx(-1.3).epsilon(1e-15));

  const CubicHenonMap b(+1, 2.0, -1.0);
  CHECK(differential(b, {1.0, 1.0}).trace() == doctest::Approx(2.0).epsilon(1e-15));

  for (int i = 0; i < 1000; ++i) {
    const CubicHenonMap m = random_map();
    CHECK(std::abs(differential(m, random_point(5.0)).det() - 1.0) < 1e-14);
  }
  const CubicHenonMap dissipative(+1, 0.1, 0.2, 0.5);
  CHECK(std::abs(differential(dissipative, random_point(5.0)).det() - 0.5) < 1e-14);
}

TEST_CASE("reversor and the reversibility identity") {
  const PlanePoint r = reversor({1.0, 2.0});
  CHECK(r.x == 2.0);
  CHECK(r.y == 1.0);
  const PlanePoint p = random_point(5.0);
  CHECK(distance(reversor(reversor(p)), p) == 0.0);

  // L o f o L = f^{-1} holds exactly in the conservative case.
  for (int i = 0; i < 1000; ++i) {
    const CubicHenonMap m = random_map();
    const PlanePoint q = random_point(5.0);
    CHECK(distance(reversor(apply(m, reversor(q))), invert(m, q)) < 1e-13);
  }
}

TEST_CASE("parameter symmetry about the m2-axis") {
  for (int i = 0; i < 200; ++i) {
    const CubicHenonMap m = random_map();
    const CubicHenonMap neg(m.nu, -m.m1, m.m2, m.j);
    const PlanePoint p = random_point(3.0);
    const PlanePoint lhs = apply(neg, {-p.x, -p.y});
    const PlanePoint rhs = apply(m, p);
    CHECK(lhs.x == doctest::Approx(-rhs.x).epsilon(1e-13));
    CHECK(std::abs(lhs.y + rhs.y) < 1e-12 * (1.0 + std::abs(rhs.y)));
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(CubicHenonMap(0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CubicHenonMap(2, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CubicHenonMap(1, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK(CubicHenonMap(1, 0.0, 0.0).conservative());
  CHECK_FALSE(CubicHenonMap(1, 0.0, 0.0, 0.99).conservative());
}

TEST_CASE("non-finite input propagates instead of throwing") {
  const CubicHenonMap m(+1, 0.0, 0.0);
  const PlanePoint q = apply(m, {std::numeric_limits<double>::infinity(), 1.0});
  CHECK_FALSE(is_finite(q));
}
