// Cubic Henon map family, its inverse, differential and the reversing
// involution.  Everything downstream (orbit solving, curve checks, phase
// portraits) consumes these primitives.
#pragma once

#include <cmath>
#include <stdexcept>

namespace biflab {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

inline bool is_finite(const PlanePoint& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

inline double norm(const PlanePoint& p) { return std::hypot(p.x, p.y); }

inline double distance(const PlanePoint& a, const PlanePoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Row-major 2x2 real matrix; enough linear algebra for monodromies and
// Newton steps, no external dependency needed.
struct Mat2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }

  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  PlanePoint operator*(const PlanePoint& v) const {
    return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
  }

  static Mat2 identity() { return {}; }
};

// x' = y,  y' = m1 + m2*y - j*x + nu*y^3.
// nu is an integer sign tag (+1 or -1); the conservative case is j == 1
// exactly.
struct CubicHenonMap {
  int nu = +1;
  double m1 = 0.0;
  double m2 = 0.0;
  double j = 1.0;

  CubicHenonMap(int nu_, double m1_, double m2_, double j_ = 1.0)
      : nu(nu_), m1(m1_), m2(m2_), j(j_) {
    if (nu != 1 && nu != -1) throw std::invalid_argument("CubicHenonMap: nu must be +1 or -1");
    if (j == 0.0) throw std::invalid_argument("CubicHenonMap: Jacobian j must be nonzero");
  }

  bool conservative() const { return j == 1.0; }
};

inline PlanePoint apply(const CubicHenonMap& m, const PlanePoint& p) {
  return {p.y, m.m1 + m.m2 * p.y - m.j * p.x + m.nu * p.y * p.y * p.y};
}

inline PlanePoint invert(const CubicHenonMap& m, const PlanePoint& p) {
  // apply(m, result) == p in exact arithmetic
  return {(m.m1 + m.m2 * p.x + m.nu * p.x * p.x * p.x - p.y) / m.j, p.x};
}

inline Mat2 differential(const CubicHenonMap& m, const PlanePoint& p) {
  return {0.0, 1.0, -m.j, m.m2 + 3.0 * m.nu * p.y * p.y};
}

// Reversing involution L: (x, y) -> (y, x).  For j == 1, L o f o L = f^{-1}.
inline PlanePoint reversor(const PlanePoint& p) { return {p.y, p.x}; }

// n-fold application; negative n iterates the inverse.
inline PlanePoint iterate(const CubicHenonMap& m, PlanePoint p, int n) {
  for (; n > 0; --n) p = apply(m, p);
  for (; n < 0; ++n) p = invert(m, p);
  return p;
}

}  // namespace biflab
