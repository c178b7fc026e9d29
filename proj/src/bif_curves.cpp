#include "biflab/bif_curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biflab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_nu(int nu) {
  if (nu != 1 && nu != -1) throw std::invalid_argument("curve: nu must be +1 or -1");
}

// +-sqrt(rhs) as an ascending list; empty when rhs < 0, {0} when rhs == 0.
std::vector<double> symmetric_pair(double rhs) {
  if (rhs < 0.0) return {};
  if (rhs == 0.0) return {0.0};
  const double r = std::sqrt(rhs);
  return {-r, r};
}

std::vector<double> apply_branch_filter(std::vector<double> values, int branch) {
  if (branch == 0) return values;
  std::vector<double> out;
  for (double v : values)
    if ((branch > 0 && v >= 0.0) || (branch < 0 && v <= 0.0)) out.push_back(v);
  return out;
}

}  // namespace

const char* to_string(CurveTag t) {
  switch (t) {
    case CurveTag::LPlus: return "Lplus";
    case CurveTag::LMinus: return "Lminus";
    case CurveTag::L2Plus: return "L2plus";
    case CurveTag::L2PlusI: return "L2plusI";
    case CurveTag::L2MinusI: return "L2minusI";
    case CurveTag::LPhi: return "Lphi";
    case CurveTag::B1Zero: return "B1zero";
    case CurveTag::NonTwist: return "nontwist";
    case CurveTag::LPiHalf: return "Lpi2";
    case CurveTag::L4_1: return "L4_1";
    case CurveTag::L4_2: return "L4_2";
    case CurveTag::L4_3: return "L4_3";
    case CurveTag::H0: return "H0";
  }
  return "?";
}

std::optional<CurveTag> curve_tag_from_string(const std::string& name) {
  static const std::pair<const char*, CurveTag> table[] = {
      {"Lplus", CurveTag::LPlus},       {"Lminus", CurveTag::LMinus},
      {"L2plus", CurveTag::L2Plus},     {"L2plusI", CurveTag::L2PlusI},
      {"L2minusI", CurveTag::L2MinusI}, {"Lphi", CurveTag::LPhi},
      {"B1zero", CurveTag::B1Zero},     {"nontwist", CurveTag::NonTwist},
      {"Lpi2", CurveTag::LPiHalf},      {"L4_1", CurveTag::L4_1},
      {"L4_2", CurveTag::L4_2},         {"L4_3", CurveTag::L4_3},
      {"H0", CurveTag::H0}};
  for (const auto& [key, tag] : table)
    if (name == key) return tag;
  return std::nullopt;
}

std::vector<double> curve_m1(const CurveId& curve, double m2) {
  require_nu(curve.nu);
  const double nu = static_cast<double>(curve.nu);
  std::vector<double> values;

  switch (curve.tag) {
    case CurveTag::LPlus: {
      const double c = 2.0 - m2;
      values = symmetric_pair((4.0 / (27.0 * nu)) * c * c * c);
      break;
    }
    case CurveTag::LMinus: {
      const double c = 4.0 - m2;
      values = symmetric_pair(-(4.0 / (27.0 * nu)) * (2.0 + m2) * c * c);
      break;
    }
    case CurveTag::L2Plus: {
      if (curve.nu != +1)
        throw std::invalid_argument("curve L2plus exists only for nu = +1");
      const double c = m2 + 4.0;
      values = symmetric_pair(-(4.0 / 27.0) * c * c * c);
      break;
    }
    case CurveTag::L2PlusI: {
      if (curve.nu != -1)
        throw std::invalid_argument("curve L2plusI exists only for nu = -1");
      if (curve.i != 1 && curve.i != 2)
        throw std::invalid_argument("curve L2plusI: branch index i must be 1 or 2");
      if (m2 <= -4.0 / 3.0) break;  // outside the stated domain
      const double base = (m2 + 4.0) / 3.0;
      const double v = 2.0 * std::pow(base, 1.5);
      values = {curve.i == 1 ? -v : v};
      break;
    }
    case CurveTag::L2MinusI: {
      if (curve.i != 1 && curve.i != 2)
        throw std::invalid_argument("curve L2minusI: branch index i must be 1 or 2");
      const double rad = 9.0 * m2 * m2 + 24.0 * m2;
      if (rad < 0.0) break;
      const double sq = std::sqrt(rad);
      const double sgn = curve.i == 1 ? -1.0 : 1.0;
      const double t = 12.0 + m2 + sgn * sq;
      const double u = -5.0 * m2 - 12.0 + sgn * sq;
      values = symmetric_pair(t * t * u / (216.0 * nu));
      break;
    }
    case CurveTag::LPhi:
    case CurveTag::LPiHalf: {
      const double c = curve.tag == CurveTag::LPiHalf ? 0.0 : std::cos(curve.phi);
      if (curve.tag == CurveTag::LPhi && (curve.phi <= 0.0 || curve.phi >= kPi))
        throw std::invalid_argument("curve Lphi: phi must lie in (0, pi)");
      const double q = m2 + c - 3.0;
      values = symmetric_pair(nu * (4.0 / 27.0) * q * q * (2.0 * c - m2));
      break;
    }
    case CurveTag::L4_1:
    case CurveTag::L4_2: {
      if (m2 < 1.0 / 3.0) break;  // curves start at the tangency points P+-
      const double v = (2.0 / (3.0 * std::sqrt(3.0))) * std::pow(1.0 + m2, 1.5);
      values = {curve.tag == CurveTag::L4_1 ? v : -v};
      break;
    }
    case CurveTag::L4_3: {
      if (m2 < 1.0) break;
      const double v = (2.0 / (3.0 * std::sqrt(3.0))) * (2.0 + m2) * std::sqrt(m2 - 1.0);
      values = v == 0.0 ? std::vector<double>{0.0} : std::vector<double>{-v, v};
      break;
    }
    case CurveTag::B1Zero:
    case CurveTag::NonTwist:
    case CurveTag::H0:
      throw std::invalid_argument("curve_m1: this curve is not an m1(m2) graph; "
                                  "use its dedicated evaluator");
  }

  values = apply_branch_filter(std::move(values), curve.branch);
  std::sort(values.begin(), values.end());
  return values;
}

double b1_zero_m2(double phi) {
  const double c = std::cos(phi);
  const double den = 1.0 + 4.0 * c;
  if (std::abs(den) < 1e-12)
    throw std::domain_error("b1_zero_m2: pole at cos(phi) = -1/4 (asymptote of the non-twist curve)");
  return (6.0 * c * c + 3.0 * c + 1.0) / den;
}

double nontwist_residual(int sign, double m1, double m2) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("nontwist_residual: sign must be +-1");
  const double m1sq = m1 * m1;
  const double quad = 8.0 * m2 * m2 * m2 - 108.0 * m2 * m2 - 63.0 * m2 + 837.0;
  const double c5 = 5.0 * m2 - 16.0;
  const double c2 = m2 - 2.0;
  const double tail = (16.0 / 27.0) * (m2 + 1.0) * c5 * c5 * c2 * c2 * c2;
  return 729.0 * m1sq * m1sq + sign * quad * m1sq - tail;
}

std::vector<double> nontwist_m2_roots(int sign, double m1, double m2_lo, double m2_hi, int grid) {
  if (grid < 3) throw std::invalid_argument("nontwist_m2_roots: grid too small");
  const auto f = [&](double m2) { return nontwist_residual(sign, m1, m2); };
  const auto at = [&](int i) { return m2_lo + (m2_hi - m2_lo) * static_cast<double>(i) / (grid - 1); };

  std::vector<double> roots;
  double prev = f(at(0));
  for (int i = 1; i < grid; ++i) {
    const double cur = f(at(i));
    if (prev == 0.0) {
      roots.push_back(at(i - 1));
    } else if (prev * cur < 0.0) {
      double a = at(i - 1), b = at(i), fa = prev;
      for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fm < 0.0) == (fa < 0.0)) { a = mid; fa = fm; } else { b = mid; }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev = cur;
  }
  if (prev == 0.0) roots.push_back(m2_hi);

  // Touch roots (even multiplicity): local minima of |f| that reach ~0.
  for (int i = 1; i + 1 < grid; ++i) {
    const double fm = std::abs(f(at(i)));
    if (fm <= std::abs(f(at(i - 1))) && fm <= std::abs(f(at(i + 1)))) {
      double a = at(i - 1), b = at(i + 1);
      for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
        const double x1 = a + (b - a) / 3.0, x2 = b - (b - a) / 3.0;
        if (std::abs(f(x1)) < std::abs(f(x2))) b = x2; else a = x1;
      }
      const double m2 = 0.5 * (a + b);
      const double scale = 1.0 + std::abs(m2);
      if (std::abs(f(m2)) < 1e-9 * scale * scale * scale * scale * scale * scale)
        roots.push_back(m2);
    }
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-7; }),
              roots.end());
  return roots;
}

std::optional<double> lphi_m2_solve(int nu, double phi, double m1, double m2_lo, double m2_hi) {
  require_nu(nu);
  const double c = std::cos(phi);
  const auto residual = [&](double m2) {
    const double q = m2 + c - 3.0;
    return m1 * m1 - nu * (4.0 / 27.0) * q * q * (2.0 * c - m2);
  };
  double a = m2_lo, b = m2_hi;
  double fa = residual(a);
  if (fa == 0.0) return a;
  if (fa * residual(b) > 0.0) return std::nullopt;
  for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = residual(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) { a = mid; fa = fm; } else { b = mid; }
  }
  return 0.5 * (a + b);
}

std::vector<double> h0_mu1(double mu2, double d) {
  if (d == 0.0) throw std::invalid_argument("h0_mu1: d must be nonzero");
  const double ratio = -mu2 / (3.0 * d);
  if (ratio < 0.0) return {};
  if (ratio == 0.0) return {0.0};  // cusp point
  const double v = 2.0 * d * std::pow(ratio, 1.5);
  return {-std::abs(v), std::abs(v)};
}

std::vector<std::array<double, 2>> pullback_curve(const CurveId& curve, const ModelFamily& model,
                                                  int k, const std::vector<double>& m2_samples) {
  if (k < 1) throw std::invalid_argument("pullback_curve: k must be >= 1");
  std::vector<std::array<double, 2>> out;
  for (double m2 : m2_samples) {
    for (double m1 : curve_m1(curve, m2)) {
      double mu1 = 0.0, mu2 = 0.0;
      mu_from_rescaled(model, k, m1, m2, &mu1, &mu2);
      out.push_back({mu1, mu2});
    }
  }
  return out;
}

}  // namespace biflab
