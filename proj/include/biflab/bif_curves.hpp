// Closed-form bifurcation curves of the conservative cubic Henon maps in the
// (m1, m2)-plane, plus their pullback to the unfolding (mu1, mu2)-plane
// through the leading-order rescaling relations.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "biflab/return_map.hpp"

namespace biflab {

enum class CurveTag {
  LPlus,      // fixed point with double eigenvalue +1
  LMinus,     // fixed point with double eigenvalue -1
  L2Plus,     // 2-orbit, double eigenvalue +1 (nu = +1 only)
  L2PlusI,    // 2-orbit, double eigenvalue +1, branch i (nu = -1 only)
  L2MinusI,   // 2-orbit, double eigenvalue -1, branch i
  LPhi,       // fixed point with eigenvalues e^{+-i.phi}
  B1Zero,     // m2 where the first Birkhoff coefficient vanishes (phi-parametrized)
  NonTwist,   // explicit quartic-in-m1 form of the B1 = 0 curve
  LPiHalf,    // LPhi at phi = pi/2 (1:4 resonance)
  L4_1,       // symmetric 4-orbit parabolic curves (A = 1 analysis)
  L4_2,
  L4_3,
  H0          // quadratic-tangency curve in the (mu1, mu2)-plane
};

const char* to_string(CurveTag t);
std::optional<CurveTag> curve_tag_from_string(const std::string& name);

struct CurveId {
  CurveTag tag = CurveTag::LPlus;
  int nu = +1;
  int branch = 0;    // 0 = all branches, otherwise +-1 selects the sign of m1
  int i = 1;         // member index for L2PlusI / L2MinusI
  double phi = 1.5707963267948966;  // angle for LPhi
};

struct CurvePoint {
  double m1 = 0.0;
  double m2 = 0.0;
  CurveId curve;
};

// All real m1 solving the curve equation at this m2, ascending; empty when
// the curve is absent there.  Throws on unsupported (tag, nu) combinations.
std::vector<double> curve_m1(const CurveId& curve, double m2);

// m2 at which the elliptic fixed point E_phi has vanishing first Birkhoff
// coefficient: m2 = (6 cos^2 phi + 3 cos phi + 1) / (1 + 4 cos phi).
// Throws std::domain_error at the pole cos phi = -1/4.
double b1_zero_m2(double phi);

// Residual of the explicit non-twist curve
//   729 m1^4 +- (8 m2^3 - 108 m2^2 - 63 m2 + 837) m1^2
//     - (16/27)(m2 + 1)(5 m2 - 16)^2 (m2 - 2)^3,
// with "+" for nu = +1 and "-" for nu = -1.
double nontwist_residual(int sign, double m1, double m2);

// Numeric m2-roots of the non-twist residual at fixed m1 on [m2_lo, m2_hi]
// (sign changes by bisection, touch roots by minimizing |residual|).
std::vector<double> nontwist_m2_roots(int sign, double m1, double m2_lo, double m2_hi,
                                      int grid = 20001);

// m2 solving the LPhi equation for a given |m1|, by bisection of the curve
// residual on [m2_lo, m2_hi]; empty when no sign change is bracketed.
std::optional<double> lphi_m2_solve(int nu, double phi, double m1, double m2_lo, double m2_hi);

// Leading-order branches of H0: mu1 = +-2 d (-mu2 / (3 d))^{3/2}; empty when
// the radicand is negative, {0} at the cusp.
std::vector<double> h0_mu1(double mu2, double d);

// Pullback of a (m1, m2)-curve into the (mu1, mu2)-plane at return number k:
//   mu2 = lambda^k (m2 - f11 x_plus),
//   mu1 = lambda^k (y_minus - c x_plus) + (|lambda|^{k/2} lambda^k / sqrt|d|) m1.
// One output pair per (m2 sample, m1 branch); domain violations yield no
// samples for that m2.
std::vector<std::array<double, 2>> pullback_curve(const CurveId& curve, const ModelFamily& model,
                                                  int k, const std::vector<double>& m2_samples);

}  // namespace biflab
