// Concrete model family for the cubic homoclinic unfolding: a local saddle
// in exact Moser form composed with a symplectic cubic global map.  Provides
// first-return maps T1 o T0^k, the rescaling to cubic-Henon coordinates, and
// detection of the quadratic-tangency curve H0.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "biflab/core_maps.hpp"

namespace biflab {

// x' = lambda*x*M(xy), y' = lambda^{-1}*y/M(xy) with M(s) = 1 + beta1*s.
// Preserves the product x*y exactly and has Jacobian 1.
struct LocalSaddleMap {
  double lambda = 0.5;
  double beta1 = 0.0;

  LocalSaddleMap(double lambda_, double beta1_) : lambda(lambda_), beta1(beta1_) {
    if (lambda == 0.0 || std::abs(lambda) >= 1.0)
      throw std::invalid_argument("LocalSaddleMap: need 0 < |lambda| < 1");
  }
};

PlanePoint apply(const LocalSaddleMap& m, const PlanePoint& p);

// Exact k-step image through the conserved product: x_k = lambda^k x M(s)^k,
// y_k = lambda^{-k} y M(s)^{-k}, s = x*y.  Throws std::domain_error when
// M(s) <= 0.
PlanePoint local_iterate(const LocalSaddleMap& m, const PlanePoint& p, int k);

// Homoclinic unfolding model.  The global map is
//   x' = x_plus + a*x + b*(y - y_minus),
//   y' = mu1 + c*x + mu2*(y - y_minus) + d*(y - y_minus)^3,
// with b*c = -1 held exactly (c is derived from b).  v1 supports only the
// simplified family a = f11 = f12 = 0, which is exactly symplectic.
struct ModelFamily {
  LocalSaddleMap local;
  double mu1 = 0.0, mu2 = 0.0;
  double a = 0.0, b = 1.0, c = -1.0, d = 1.0;
  double f11 = 0.0, f12 = 0.0;
  double x_plus = 1.0, y_minus = 1.0;

  ModelFamily(const LocalSaddleMap& local_, double mu1_, double mu2_, double b_, double d_,
              double x_plus_, double y_minus_)
      : local(local_), mu1(mu1_), mu2(mu2_), b(b_), c(-1.0 / b_), d(d_),
        x_plus(x_plus_), y_minus(y_minus_) {
    if (b == 0.0) throw std::invalid_argument("ModelFamily: b must be nonzero");
    if (d == 0.0) throw std::invalid_argument("ModelFamily: cubic coefficient d must be nonzero");
    if (x_plus <= 0.0 || y_minus <= 0.0)
      throw std::invalid_argument("ModelFamily: homoclinic point coordinates must be positive");
  }
};

// Differential of the exact k-step local map at p (unit determinant).
Mat2 local_differential(const LocalSaddleMap& m, const PlanePoint& p, int k);

// The global map T1 (acts near (0, y_minus), lands near (x_plus, 0)).
PlanePoint global_map(const ModelFamily& m, const PlanePoint& p);

Mat2 global_differential(const ModelFamily& m, const PlanePoint& p);

// T1(T0^k(p)) for p near (x_plus, 0).
PlanePoint first_return(const ModelFamily& m, int k, const PlanePoint& p);

struct RescaledParams {
  double m1 = 0.0;
  double m2 = 0.0;
  int nu = +1;  // sign(d * lambda^k)
};

// Leading-order rescaled parameters of the k-th return map (corrections are
// identically zero in the simplified family).
RescaledParams rescale_params(const ModelFamily& m, int k);

// Unfolding parameters realizing prescribed rescaled (m1, m2) at the given k;
// inverse of rescale_params.
void mu_from_rescaled(const ModelFamily& m, int k, double m1, double m2,
                      double* mu1, double* mu2);

// The first return map conjugated to the rescaled coordinates (X, Y) by the
// shift + scaling of the rescaling construction.  Evaluation keeps the
// lambda^k factors symbolic so the beta1 = 0 case reproduces the cubic Henon
// map to machine precision for every k.
class RescaledReturn {
 public:
  RescaledReturn(const ModelFamily& model, int k);

  int k() const { return k_; }
  double m1() const { return params_.m1; }
  double m2() const { return params_.m2; }
  int nu() const { return params_.nu; }

  // Factored evaluation (numerically stable for large k).
  PlanePoint operator()(const PlanePoint& xy) const;

  // Literal route: undo the scaling, run T1 o T0^k, redo the scaling.  Used
  // to cross-check the factored algebra at moderate k.
  PlanePoint via_composition(const PlanePoint& xy) const;

  // sup-norm distance to the cubic Henon map with this object's (m1, m2, nu)
  // over the box |X|,|Y| <= box, sampled on a grid_n x grid_n grid.
  double henon_sup_distance(double box = 2.0, int grid_n = 64) const;

 private:
  ModelFamily model_;
  int k_;
  RescaledParams params_;
  double scale_ = 1.0;        // |lambda|^{k/2} / sqrt|d|
  double lambda_k_ = 1.0;     // lambda^k
  double inv_lambda_k_ = 1.0;
  double delta_ = 0.0;        // mu1/lambda^k - (y_minus - c*x_plus)
  double m2_back_ = 0.0;      // mu2/lambda^k
  double shift_xi_ = 0.0;     // alpha_k^1 = -a*lambda^k*x_plus (0 in v1)
  double shift_eta_ = 0.0;    // alpha_k^2 = -(f12/3d)*lambda^k*x_plus (0 in v1)
};

// mu1 values where the unstable-manifold image
//   y = mu1 + (mu2/b)(x - x_plus) + (d/b^3)(x - x_plus)^3
// is tangent to y = 0, found by Newton on the simultaneous system
// l_u = 0, dl_u/dx = 0.  Empty when -mu2/(3d) < 0; the cusp at mu2 = 0
// returns {0}.
std::vector<double> h0_detect(const ModelFamily& m, double mu2);

// Independent 1D oracle: the mu1 at which the extremum of l_u on the given
// x-branch (side = +-1) touches zero.
double h0_tangency_oracle(const ModelFamily& m, double mu2, int side);

}  // namespace biflab
