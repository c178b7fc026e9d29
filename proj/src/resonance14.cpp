#include "biflab/resonance14.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace biflab {

namespace {

constexpr double kDegeneracyTol = 1e-12;
constexpr double kEquilibriumResidualTol = 1e-13;
constexpr double kDedupDistance = 1e-8;
constexpr double kLineTol = 1e-9;
constexpr double kParabolicEigTol = 1e-6;

using Complex = std::complex<double>;

// Wirtinger derivatives of the field: dW/dz and dW/dconj(z).
struct WirtingerPair {
  Complex dz;
  Complex dzbar;
};

WirtingerPair flow_wirtinger(const FlowNF& nf, Complex z) {
  const Complex zb = std::conj(z);
  const Complex z2 = z * z, zb2 = zb * zb;
  const Complex zzb = z * zb;  // |z|^2
  if (nf.variant == FlowVariant::CenterUnfolding) {
    const Complex i4(0.0, -4.0);
    const Complex dz = i4 * (nf.beta + 2.0 * nf.b1 * zzb + 5.0 * nf.a_hat * z2 * z2 +
                             3.0 * nf.b2 * zzb * zzb + nf.c_hat * zb2 * zb2);
    const Complex dzb = i4 * (nf.b1 * z2 + 3.0 * nf.mu * zb2 + 2.0 * nf.b2 * z2 * zzb +
                              4.0 * nf.c_hat * zzb * zb2);
    return {dz, dzb};
  }
  const Complex i1(0.0, 1.0);
  const Complex dz = i1 * (nf.beta + 2.0 * (1.0 + nf.mu) * zzb + 3.0 * nf.b2 * zzb * zzb +
                           nf.c_hat * zb2 * zb2);
  const Complex dzb = i1 * ((1.0 + nf.mu) * z2 + 3.0 * zb2 + 2.0 * nf.b2 * z2 * zzb +
                            4.0 * nf.c_hat * zzb * zb2);
  return {dz, dzb};
}

}  // namespace

ResonanceData resonance_coefficients(int nu, double m2) {
  if (nu != 1 && nu != -1) throw std::invalid_argument("resonance_coefficients: nu must be +-1");
  ResonanceData out;
  if (nu == +1) {
    out.b1 = (3.0 - 3.0 * m2) / 8.0;
    out.b03 = (1.0 + 3.0 * m2) / 8.0;
  } else {
    out.b1 = (-3.0 + 3.0 * m2) / 8.0;
    out.b03 = (-1.0 - 3.0 * m2) / 8.0;
  }
  if (std::abs(out.b03) < kDegeneracyTol) {
    out.a_ratio = std::numeric_limits<double>::infinity();
    out.degeneracy = Degeneracy::B03Zero;
  } else {
    out.a_ratio = std::abs(out.b1) / std::abs(out.b03);
    out.degeneracy = std::abs(out.a_ratio - 1.0) < kDegeneracyTol ? Degeneracy::AEqualsOne
                                                                  : Degeneracy::None;
  }
  return out;
}

ResonantPointClass classify_resonant_point(int nu, double m2) {
  const ResonanceData d = resonance_coefficients(nu, m2);
  if (d.degeneracy != Degeneracy::None) return ResonantPointClass::Degenerate;
  return d.a_ratio > 1.0 ? ResonantPointClass::EllipticType
                         : ResonantPointClass::SaddleEightSeparatrices;
}

FlowNF FlowNF::center_unfolding(double beta, double mu, double b1, double b2, double a_hat) {
  FlowNF nf;
  nf.variant = FlowVariant::CenterUnfolding;
  nf.beta = beta;
  nf.mu = mu;
  nf.b1 = b1;
  nf.b2 = b2;
  nf.a_hat = a_hat;
  nf.c_hat = 5.0 * a_hat;  // zero-divergence constraint
  return nf;
}

FlowNF FlowNF::ratio_one_unfolding(double beta, double mu, double b2, double c) {
  if (b2 == c)
    throw std::invalid_argument("ratio_one_unfolding: nondegeneracy requires b2 != c");
  FlowNF nf;
  nf.variant = FlowVariant::RatioOneUnfolding;
  nf.beta = beta;
  nf.mu = mu;
  nf.b2 = b2;
  nf.c_hat = c;
  return nf;
}

std::complex<double> flow_field(const FlowNF& nf, Complex z) {
  const Complex zb = std::conj(z);
  const Complex zzb = z * zb;
  const Complex zb3 = zb * zb * zb;
  if (nf.variant == FlowVariant::CenterUnfolding) {
    // Linear term +beta z: with the printed -beta the family's own
    // existence condition b1*beta < 0 for the 8-equilibrium ring fails;
    // this labeling (beta -> -beta) is the self-consistent one.
    const Complex inner = nf.beta * z + nf.b1 * zzb * z + nf.mu * zb3 + nf.a_hat * z * z * z * z * z +
                          nf.b2 * zzb * zzb * z + nf.c_hat * zzb * zb3;
    return Complex(0.0, -4.0) * inner;
  }
  const Complex inner = nf.beta * z + (1.0 + nf.mu) * zzb * z + zb3 + nf.b2 * zzb * zzb * z +
                        nf.c_hat * zzb * zb3;
  return Complex(0.0, 1.0) * inner;
}

Mat2 flow_jacobian(const FlowNF& nf, Complex z) {
  const auto [a, b] = flow_wirtinger(nf, z);
  // d(u+iv) = a dz + b dconj(z) translated to the real Jacobian.
  return {std::real(a + b), -std::imag(a - b), std::imag(a + b), std::real(a - b)};
}

std::vector<FlowEquilibrium> flow_equilibria(const FlowNF& nf, double search_radius) {
  if (search_radius <= 0.0) throw std::invalid_argument("flow_equilibria: radius must be positive");

  std::vector<PlanePoint> found;
  const int n = 64;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex z(-search_radius + 2.0 * search_radius * (i + 0.5) / n,
                -search_radius + 2.0 * search_radius * (j + 0.5) / n);
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        const Complex f = flow_field(nf, z);
        if (std::abs(f) < kEquilibriumResidualTol) { converged = true; break; }
        const Mat2 jac = flow_jacobian(nf, z);
        const double det = jac.det();
        const double scale = std::max({std::abs(jac.a11), std::abs(jac.a12), std::abs(jac.a21),
                                       std::abs(jac.a22), 1.0});
        if (std::abs(det) < 1e-14 * scale * scale) break;
        const double fx = std::real(f), fy = std::imag(f);
        z -= Complex((fx * jac.a22 - fy * jac.a12) / det, (fy * jac.a11 - fx * jac.a21) / det);
        if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z)) || std::abs(z) > 1e3)
          break;
      }
      if (!converged || std::abs(z) > search_radius + 1e-9) continue;
      const PlanePoint p{std::real(z), std::imag(z)};
      bool dup = false;
      for (const auto& q : found)
        if (distance(p, q) < kDedupDistance) { dup = true; break; }
      if (!dup) found.push_back(p);
    }
  }

  std::sort(found.begin(), found.end(), [](const PlanePoint& a, const PlanePoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });

  std::vector<FlowEquilibrium> out;
  for (const auto& p : found) {
    FlowEquilibrium eq;
    eq.position = p;
    const Mat2 jac = flow_jacobian(nf, Complex(p.x, p.y));
    const double tr = jac.trace();
    const double det = jac.det();
    const double disc = tr * tr - 4.0 * det;
    // Eigenvalues; the fields are trace-free at on-line equilibria, so the
    // pair is +-sqrt(-det) up to rounding.
    double eig_mag;
    if (disc >= 0.0) {
      eig_mag = 0.5 * (std::abs(tr) + std::sqrt(disc));
    } else {
      eig_mag = std::hypot(0.5 * tr, 0.5 * std::sqrt(-disc));
    }
    if (eig_mag < kParabolicEigTol) {
      eq.kind = EquilibriumKind::Parabolic;
    } else if (det < 0.0) {
      eq.kind = EquilibriumKind::Saddle;
    } else {
      eq.kind = EquilibriumKind::Center;
    }
    if (std::abs(p.x - p.y) / std::sqrt(2.0) < kLineTol) eq.on_symmetry_line = SymmetryLine::Diagonal;
    else if (std::abs(p.x + p.y) / std::sqrt(2.0) < kLineTol) eq.on_symmetry_line = SymmetryLine::AntiDiagonal;
    else if (std::abs(p.x) < kLineTol) eq.on_symmetry_line = SymmetryLine::XAxisZero;
    else if (std::abs(p.y) < kLineTol) eq.on_symmetry_line = SymmetryLine::YAxisZero;
    out.push_back(std::move(eq));
  }
  return out;
}

std::vector<double> flow_l3_locator(const FlowNF& base, double beta_fixed, double mu_lo,
                                    double mu_hi) {
  if (base.variant != FlowVariant::RatioOneUnfolding)
    throw std::invalid_argument("flow_l3_locator: defined for the RatioOneUnfolding family");
  if (mu_hi <= mu_lo) throw std::invalid_argument("flow_l3_locator: empty mu range");

  // All nontrivial equilibria lie on the four symmetry lines (for
  // |c_hat| r^2 < 1); on a ray with e^{-4 i theta} = s the radial equation is
  // the quadratic in u = r^2:
  //   Q_s(u) = beta + (1 + mu + s) u + (b2 + s*c_hat) u^2.
  const auto positive_roots = [&](double mu, int s) -> int {
    const double a = base.b2 + s * base.c_hat;
    const double b = 1.0 + mu + s;
    const double c = beta_fixed;
    int count = 0;
    if (a == 0.0) {
      if (b != 0.0 && -c / b > 0.0) count = 1;
      return count;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    for (double u : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
      if (u > 0.0) ++count;
    return count;
  };
  const auto total = [&](double mu) { return positive_roots(mu, +1) + positive_roots(mu, -1); };

  std::vector<double> crossings;
  const int grid = 4096;
  int prev = total(mu_lo);
  for (int i = 1; i <= grid; ++i) {
    const double mu = mu_lo + (mu_hi - mu_lo) * static_cast<double>(i) / grid;
    const int cur = total(mu);
    if (cur != prev) {
      double a = mu_lo + (mu_hi - mu_lo) * static_cast<double>(i - 1) / grid, b = mu;
      const int ca = total(a);
      while (b - a > 1e-10) {
        const double mid = 0.5 * (a + b);
        if (total(mid) == ca) a = mid; else b = mid;
      }
      crossings.push_back(0.5 * (a + b));
      prev = cur;
    }
  }
  return crossings;
}

}  // namespace biflab
