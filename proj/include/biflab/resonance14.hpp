// 1:4 resonance analysis: normal-form coefficients B1, B03 and the ratio
// A = |B1|/|B03| on the pi/2-resonance curves, classification of the
// resonant fixed point, and equilibria of the two truncated Hamiltonian
// flow normal forms that unfold the degenerate cases B03 = 0 and A = 1.
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "biflab/core_maps.hpp"

namespace biflab {

enum class Degeneracy { None, B03Zero, AEqualsOne };

struct ResonanceData {
  double b1 = 0.0;       // first Birkhoff coefficient at phi = pi/2
  double b03 = 0.0;      // resonant cubic coefficient
  double a_ratio = 0.0;  // |b1| / |b03|, +inf when b03 == 0
  Degeneracy degeneracy = Degeneracy::None;
};

// Exact rational coefficients on the corresponding L_{pi/2} curve:
// nu = +1: 8 B1 = 3 - 3 m2, 8 B03 = 1 + 3 m2;
// nu = -1: 8 B1 = -3 + 3 m2, 8 B03 = -1 - 3 m2.
ResonanceData resonance_coefficients(int nu, double m2);

enum class ResonantPointClass { EllipticType, SaddleEightSeparatrices, Degenerate };

// EllipticType iff A > 1, SaddleEightSeparatrices iff A < 1 and B03 != 0,
// Degenerate iff A = 1 or B03 = 0.
ResonantPointClass classify_resonant_point(int nu, double m2);

// The two truncated flow families (O(|z|^7) tails dropped):
//   CenterUnfolding (vanishing-B03 case, pi/2-equivariant, reversible):
//     dz/dt = -4i ( beta z + b1 z|z|^2 + mu conj(z)^3
//                   + a_hat z^5 + b2 |z|^4 z + c_hat |z|^2 conj(z)^3 ),
//     with 5 a_hat = c_hat (zero divergence).
//   RatioOneUnfolding (A = 1 case):
//     dz/dt = i beta z + i(1+mu) z|z|^2 + i conj(z)^3
//             + i b2 |z|^4 z + i c_hat |z|^2 conj(z)^3,   b2 != c_hat.
enum class FlowVariant { CenterUnfolding, RatioOneUnfolding };

struct FlowNF {
  FlowVariant variant = FlowVariant::CenterUnfolding;
  double beta = 0.0;
  double mu = 0.0;
  double b1 = 0.0;     // CenterUnfolding only
  double b2 = 0.0;
  double a_hat = 0.0;  // CenterUnfolding only
  double c_hat = 0.0;

  static FlowNF center_unfolding(double beta, double mu, double b1, double b2 = 0.0,
                                 double a_hat = 0.0);
  static FlowNF ratio_one_unfolding(double beta, double mu, double b2 = 0.0, double c = 0.0);
};

std::complex<double> flow_field(const FlowNF& nf, std::complex<double> z);
Mat2 flow_jacobian(const FlowNF& nf, std::complex<double> z);

enum class EquilibriumKind { Center, Saddle, Parabolic };

// Symmetry lines through the origin, in the order used by FlowEquilibrium.
enum class SymmetryLine { Diagonal /*x=y*/, AntiDiagonal /*x=-y*/, XAxisZero /*x=0*/, YAxisZero /*y=0*/ };

struct FlowEquilibrium {
  PlanePoint position;
  EquilibriumKind kind = EquilibriumKind::Center;
  std::optional<SymmetryLine> on_symmetry_line;
};

// All equilibria with |z| <= search_radius: Newton from a 64x64 seed grid,
// deduplicated at 1e-8, classified by linearization, symmetry-line
// membership tested at 1e-9.  Sorted by position for determinism.
std::vector<FlowEquilibrium> flow_equilibria(const FlowNF& nf, double search_radius = 1.5);

// mu values in [mu_lo, mu_hi] at which a ring of nontrivial equilibria is
// born/destroyed through a radial fold (double-zero linearization), for the
// RatioOneUnfolding family at fixed beta.  Located by bisection to 1e-10.
std::vector<double> flow_l3_locator(const FlowNF& base, double beta_fixed, double mu_lo,
                                    double mu_hi);

}  // namespace biflab
