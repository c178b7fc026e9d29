// Real roots of a depressed cubic t^3 + p t + q with multiplicity detection.
// Trigonometric/Cardano branches plus one Newton polish step; double roots
// are recognized through a relative discriminant threshold so the solver
// stays robust near fold points.
#pragma once

#include <array>

namespace biflab {

struct CubicRoots {
  int count = 0;                      // number of distinct real roots (1..3)
  std::array<double, 3> root{};       // ascending
  std::array<int, 3> multiplicity{};  // 1, 2 or 3
};

CubicRoots solve_depressed_cubic(double p, double q, double rel_tol = 1e-10);

}  // namespace biflab
