#include "biflab/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace biflab {

namespace {

double polish(double t, double p, double q) {
  // One or two Newton steps; harmless at simple roots, skipped when the
  // derivative is too small (double roots are handled analytically).
  for (int it = 0; it < 2; ++it) {
    const double f = t * t * t + p * t + q;
    const double df = 3.0 * t * t + p;
    if (std::abs(df) < 1e-8 * (1.0 + 3.0 * t * t + std::abs(p))) break;
    t -= f / df;
  }
  return t;
}

}  // namespace

CubicRoots solve_depressed_cubic(double p, double q, double rel_tol) {
  CubicRoots out;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  const double scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q;

  if (scale == 0.0) {  // p == q == 0: triple root at 0
    out.count = 1;
    out.root[0] = 0.0;
    out.multiplicity[0] = 3;
    return out;
  }

  if (std::abs(disc) <= rel_tol * scale) {
    // Degenerate discriminant: double (or triple) root.
    if (p == 0.0) {
      out.count = 1;
      out.root[0] = std::cbrt(-q);
      out.multiplicity[0] = 3;
      return out;
    }
    const double td = -3.0 * q / (2.0 * p);  // double root
    const double ts = 3.0 * q / p;           // simple root
    if (std::abs(td - ts) <= 1e-8 * (1.0 + std::abs(td))) {
      out.count = 1;
      out.root[0] = td;
      out.multiplicity[0] = 3;
      return out;
    }
    out.count = 2;
    if (ts < td) {
      out.root = {ts, td, 0.0};
      out.multiplicity = {1, 2, 0};
    } else {
      out.root = {td, ts, 0.0};
      out.multiplicity = {2, 1, 0};
    }
    return out;
  }

  if (disc > 0.0) {
    // Three distinct real roots: trigonometric form (p < 0 here).
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    constexpr double two_pi_3 = 2.0943951023931953;
    out.count = 3;
    out.root = {polish(m * std::cos(theta - two_pi_3), p, q),
                polish(m * std::cos(theta - 2.0 * two_pi_3), p, q),
                polish(m * std::cos(theta), p, q)};
    out.multiplicity = {1, 1, 1};
    std::sort(out.root.begin(), out.root.begin() + 3);
    return out;
  }

  // One real root: Cardano.
  const double r = -q / 2.0;
  const double w = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const double u = std::cbrt(r + (r >= 0.0 ? w : -w));
  const double t = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
  out.count = 1;
  out.root[0] = polish(t, p, q);
  out.multiplicity[0] = 1;
  return out;
}

}  // namespace biflab
