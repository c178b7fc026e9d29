#include "biflab/return_map.hpp"

#include <algorithm>
#include <cmath>

namespace biflab {

namespace {

// lambda^k by binary exponentiation; deterministic and sign-exact for
// negative bases.
double ipow(double base, int k) {
  double r = 1.0, b = base;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

double moser_factor(double beta1, double s, int k) {
  // (1 + beta1*s)^k, with the domain guard shared by all call sites.
  const double m = 1.0 + beta1 * s;
  if (m <= 0.0) throw std::domain_error("local saddle map: 1 + beta1*x*y must stay positive");
  return std::exp(static_cast<double>(k) * std::log1p(beta1 * s));
}

// expm1 version of moser_factor - 1, accurate when k*beta1*s is tiny.
double moser_factor_m1(double beta1, double s, int k) {
  const double m = 1.0 + beta1 * s;
  if (m <= 0.0) throw std::domain_error("local saddle map: 1 + beta1*x*y must stay positive");
  return std::expm1(static_cast<double>(k) * std::log1p(beta1 * s));
}

// Solves s = lk * x0 * yk * (1 + beta1*s)^k for the conserved product of the
// entry point (Newton, seeded at the beta1 = 0 value).
double solve_entry_product(double beta1, double lk, double x0, double yk, int k) {
  const double base = lk * x0 * yk;
  if (beta1 == 0.0) return base;
  double s = base;
  for (int it = 0; it < 100; ++it) {
    const double m = 1.0 + beta1 * s;
    if (m <= 0.0) throw std::domain_error("local saddle map: 1 + beta1*x*y must stay positive");
    const double mk = std::exp(static_cast<double>(k) * std::log1p(beta1 * s));
    const double h = s - base * mk;
    const double dh = 1.0 - base * static_cast<double>(k) * beta1 * mk / m;
    if (dh == 0.0) break;
    const double snew = s - h / dh;
    if (std::abs(snew - s) <= 1e-16 * (1.0 + std::abs(snew))) return snew;
    s = snew;
  }
  if (!std::isfinite(s)) throw std::domain_error("entry product iteration diverged");
  return s;
}

void require_simplified(const ModelFamily& m, const char* who) {
  if (m.a != 0.0 || m.f11 != 0.0 || m.f12 != 0.0)
    throw std::invalid_argument(std::string(who) + ": only the simplified family a = f11 = f12 = 0 is supported");
}

}  // namespace

PlanePoint apply(const LocalSaddleMap& m, const PlanePoint& p) {
  const double s = p.x * p.y;
  const double factor = 1.0 + m.beta1 * s;
  if (factor <= 0.0) throw std::domain_error("local saddle map: 1 + beta1*x*y must stay positive");
  return {m.lambda * p.x * factor, p.y / (m.lambda * factor)};
}

PlanePoint local_iterate(const LocalSaddleMap& m, const PlanePoint& p, int k) {
  if (k < 0) throw std::invalid_argument("local_iterate: k must be >= 0");
  const double s = p.x * p.y;  // conserved along the orbit
  const double mk = moser_factor(m.beta1, s, k);
  const double lk = ipow(m.lambda, k);
  return {lk * p.x * mk, p.y / (lk * mk)};
}

PlanePoint global_map(const ModelFamily& m, const PlanePoint& p) {
  require_simplified(m, "global_map");
  const double v = p.y - m.y_minus;
  return {m.x_plus + m.a * p.x + m.b * v,
          m.mu1 + m.c * p.x + m.mu2 * v + m.d * v * v * v};
}

PlanePoint first_return(const ModelFamily& m, int k, const PlanePoint& p) {
  return global_map(m, local_iterate(m.local, p, k));
}

RescaledParams rescale_params(const ModelFamily& m, int k) {
  if (k < 1) throw std::invalid_argument("rescale_params: k must be >= 1");
  const double lk = ipow(m.local.lambda, k);
  const double scale = std::pow(std::abs(m.local.lambda), 0.5 * k) / std::sqrt(std::abs(m.d));
  RescaledParams out;
  out.m1 = (m.mu1 / lk - (m.y_minus - m.c * m.x_plus)) / scale;
  out.m2 = m.mu2 / lk + m.f11 * m.x_plus;
  out.nu = (m.d > 0.0 ? 1 : -1) * (lk > 0.0 ? 1 : -1);
  return out;
}

void mu_from_rescaled(const ModelFamily& m, int k, double m1, double m2,
                      double* mu1, double* mu2) {
  const double lk = ipow(m.local.lambda, k);
  const double scale = std::pow(std::abs(m.local.lambda), 0.5 * k) / std::sqrt(std::abs(m.d));
  *mu1 = lk * ((m.y_minus - m.c * m.x_plus) + scale * m1);
  *mu2 = lk * (m2 - m.f11 * m.x_plus);
}

RescaledReturn::RescaledReturn(const ModelFamily& model, int k) : model_(model), k_(k) {
  if (k < 1) throw std::invalid_argument("RescaledReturn: k must be >= 1");
  require_simplified(model, "RescaledReturn");
  params_ = rescale_params(model, k);
  lambda_k_ = ipow(model.local.lambda, k);
  inv_lambda_k_ = 1.0 / lambda_k_;
  scale_ = std::pow(std::abs(model.local.lambda), 0.5 * k) / std::sqrt(std::abs(model.d));
  delta_ = model.mu1 * inv_lambda_k_ - (model.y_minus - model.c * model.x_plus);
  m2_back_ = model.mu2 * inv_lambda_k_;
  shift_xi_ = -model.a * lambda_k_ * model.x_plus;                       // 0 in v1
  shift_eta_ = -(model.f12 / (3.0 * model.d)) * lambda_k_ * model.x_plus;  // 0 in v1
}

PlanePoint RescaledReturn::operator()(const PlanePoint& xy) const {
  const double X = xy.x, Y = xy.y;
  const double beta1 = model_.local.beta1;
  const double x0 = model_.x_plus - shift_xi_ + model_.b * scale_ * X;
  const double u = scale_ * Y - shift_eta_;  // yk - y_minus
  const double yk = model_.y_minus + u;

  // Entry product and the two Moser correction factors (both vanish for
  // beta1 = 0, which keeps the factored form exact).
  const double s_in = solve_entry_product(beta1, lambda_k_, x0, yk, k_);
  const double em = moser_factor_m1(beta1, s_in, k_);  // M(s)^k - 1
  const double mk = 1.0 + em;                          // M(s)^k

  // W = ybar / lambda^k kept in O(1) form: the constant part collapses to
  // delta_ = mu1/lambda^k - (y_minus - c x_plus), the x-part uses cb = -1.
  const double poly = -X * mk + m2_back_ * Y + static_cast<double>(params_.nu) * Y * Y * Y;
  const double w_minus_ym = delta_ + model_.c * model_.x_plus * em + scale_ * poly;
  const double w = model_.y_minus + w_minus_ym;

  // Next-round cross coordinate: eta_bar = W * M(xbar*ybar)^{-k} - y_minus.
  const double xbar = model_.x_plus + model_.a * (lambda_k_ * x0 * mk) + model_.b * u;
  const double ybar = lambda_k_ * w;
  const double em_out = beta1 == 0.0 ? 0.0 : moser_factor_m1(beta1, xbar * ybar, -k_);
  const double eta_bar = w_minus_ym + w * em_out + shift_eta_;

  const double xi_bar = xbar - model_.x_plus + shift_xi_;
  return {xi_bar / (model_.b * scale_), eta_bar / scale_};
}

PlanePoint RescaledReturn::via_composition(const PlanePoint& xy) const {
  const double X = xy.x, Y = xy.y;
  const double x0 = model_.x_plus - shift_xi_ + model_.b * scale_ * X;
  const double yk = model_.y_minus + scale_ * Y - shift_eta_;
  const double s_in = solve_entry_product(model_.local.beta1, lambda_k_, x0, yk, k_);
  const double y0 = (x0 == 0.0) ? 0.0 : s_in / x0;

  const PlanePoint q = first_return(model_, k_, {x0, y0});

  const double mk_out = moser_factor(model_.local.beta1, q.x * q.y, k_);
  const double yk_next = q.y * inv_lambda_k_ / mk_out;
  return {(q.x - model_.x_plus + shift_xi_) / (model_.b * scale_),
          (yk_next - model_.y_minus + shift_eta_) / scale_};
}

double RescaledReturn::henon_sup_distance(double box, int grid_n) const {
  const CubicHenonMap henon(params_.nu, params_.m1, params_.m2);
  double sup = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double X = -box + 2.0 * box * i / (grid_n - 1);
      const double Y = -box + 2.0 * box * j / (grid_n - 1);
      const PlanePoint a = (*this)({X, Y});
      const PlanePoint b = apply(henon, {X, Y});
      sup = std::max({sup, std::abs(a.x - b.x), std::abs(a.y - b.y)});
    }
  }
  return sup;
}

std::vector<double> h0_detect(const ModelFamily& m, double mu2) {
  require_simplified(m, "h0_detect");
  const double ratio = -mu2 / (3.0 * m.d);
  if (ratio < 0.0) return {};
  if (mu2 == 0.0) return {0.0};  // cusp: the tangency is cubic here

  // Tangency of l_u(x) = mu1 + (mu2/b) u + (d/b^3) u^3 (u = x - x_plus) with
  // y = 0: solve l_u = 0, dl_u/du = 0 per branch by Newton in (u, mu1).
  std::vector<double> out;
  const double t = std::sqrt(ratio);
  for (int side = -1; side <= 1; side += 2) {
    double u = 0.5 * side * m.b * t;  // deliberately rough start
    double mu1 = 0.0;
    const double c1 = m.mu2 / m.b;
    const double c3 = m.d / (m.b * m.b * m.b);
    for (int it = 0; it < 80; ++it) {
      const double l = mu1 + c1 * u + c3 * u * u * u;
      const double dl = c1 + 3.0 * c3 * u * u;
      const double ddl = 6.0 * c3 * u;
      if (ddl == 0.0) break;
      const double du = -dl / ddl;
      u += du;
      mu1 = -(c1 * u + c3 * u * u * u);
      if (std::abs(du) < 1e-15 * (1.0 + std::abs(u)) && std::abs(l) < 1e-13) break;
    }
    out.push_back(mu1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double h0_tangency_oracle(const ModelFamily& m, double mu2, int side) {
  require_simplified(m, "h0_tangency_oracle");
  if (side != 1 && side != -1) throw std::invalid_argument("h0_tangency_oracle: side must be +-1");
  const double ratio = -mu2 / (3.0 * m.d);
  if (ratio < 0.0) throw std::domain_error("h0_tangency_oracle: no tangency for this mu2 sign");
  const double c1 = m.mu2 / m.b;
  const double c3 = m.d / (m.b * m.b * m.b);
  const auto dl = [&](double u) { return c1 + 3.0 * c3 * u * u; };

  // Bracket the critical point of l_u on the requested u-branch and bisect.
  const double reach = 2.0 * std::abs(m.b) * std::sqrt(ratio) + 1.0;
  double a = side * 1e-12 * reach, b = side * reach;
  double fa = dl(a);
  if (dl(b) * fa > 0.0) throw std::domain_error("h0_tangency_oracle: no critical point on this branch");
  for (int it = 0; it < 200 && std::abs(b - a) > 1e-15 * (1.0 + std::abs(b)); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = dl(mid);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  const double u = 0.5 * (a + b);
  return -(c1 * u + c3 * u * u * u);  // mu1 making the extremum touch zero
}

}  // namespace biflab
