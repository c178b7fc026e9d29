// biflab command-line front door: curve evaluation/CSV export, bifurcation
// scans, return-map rescaling tables, 1:4 resonance reports and phase
// portraits.  Exit codes: 0 success, 1 internal numerical failure,
// 2 usage/domain error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "biflab/bif_curves.hpp"
#include "biflab/orbit_solver.hpp"
#include "biflab/portrait.hpp"
#include "biflab/resonance14.hpp"
#include "biflab/return_map.hpp"
#include "biflab/util.hpp"

namespace {

using namespace biflab;
using nlohmann::json;

struct Range {
  double lo = 0.0, hi = 0.0;
  int count = 0;

  std::vector<double> samples() const {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
      out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    return out;
  }
};

Range parse_range(const std::string& text) {
  Range r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ':' || c2 != ':' || r.count < 0 ||
      !(in >> std::ws).eof())
    throw CLI::ValidationError("expected a range of the form lo:hi:count, got '" + text + "'");
  return r;
}

void parse_int_pair(const std::string& text, int* a, int* b) {
  char c = 0;
  std::istringstream in(text);
  if (!(in >> *a >> c >> *b) || c != ':' || !(in >> std::ws).eof())
    throw CLI::ValidationError("expected a pair of the form lo:hi, got '" + text + "'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

ModelFamily load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read model file '" + path + "'");
  json doc = json::parse(f);
  static const char* known[] = {"lambda", "beta1", "mu1", "mu2", "b", "d", "x_plus", "y_minus"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("model file: unknown key '" + key + "'");
  }
  const auto get = [&](const char* key, std::optional<double> fallback) {
    if (doc.contains(key)) return doc[key].get<double>();
    if (fallback) return *fallback;
    throw std::invalid_argument(std::string("model file: missing key '") + key + "'");
  };
  const LocalSaddleMap local(get("lambda", std::nullopt), get("beta1", 0.0));
  return ModelFamily(local, get("mu1", 0.0), get("mu2", 0.0), get("b", 1.0),
                     get("d", std::nullopt), get("x_plus", 1.0), get("y_minus", 1.0));
}

// ---------------------------------------------------------------- curves ---

struct CurvesArgs {
  std::string curve;
  int nu = +1;
  int branch = 0;
  int i = 1;
  double phi = 1.5707963267948966;
  std::string m2_range;
  std::string phi_range;
  std::optional<double> m1_fixed;
  std::optional<double> mu2_fixed;
  std::string mu2_range;
  double d = 1.0;
  int sign = 0;
  bool pullback = false;
  std::string model_path;
  int k = 4;
  std::string output;
};

void emit_rows(std::ostream& out, const std::string& tag, int nu, int branch,
               const char* col1, const char* col2,
               const std::vector<std::array<double, 2>>& rows) {
  out << "curve_tag,nu,branch," << col1 << ',' << col2 << '\n';
  for (const auto& row : rows)
    out << tag << ',' << nu << ',' << branch << ',' << format_g17(row[0]) << ','
        << format_g17(row[1]) << '\n';
}

int run_curves(const CurvesArgs& args) {
  const auto tag = curve_tag_from_string(args.curve);
  if (!tag) throw std::invalid_argument("unknown curve '" + args.curve + "' (flag --curve)");

  std::vector<std::array<double, 2>> rows;  // (value, abscissa)
  const char* col1 = "m1";
  const char* col2 = "m2";

  if (*tag == CurveTag::NonTwist) {
    const int sign = args.sign != 0 ? args.sign : args.nu;
    if (!args.m1_fixed)
      throw std::invalid_argument("--curve nontwist requires --m1 (flag --m1)");
    Range r{-5.0, 5.0, 0};
    if (!args.m2_range.empty()) r = parse_range(args.m2_range);
    const auto roots = nontwist_m2_roots(sign, *args.m1_fixed, r.lo, r.hi);
    for (double m2 : roots) {
      std::cout << format_g17(m2) << '\n';
      rows.push_back({*args.m1_fixed, m2});
    }
  } else if (*tag == CurveTag::H0) {
    col1 = "mu1";
    col2 = "mu2";
    std::vector<double> mu2s;
    if (args.mu2_fixed) mu2s.push_back(*args.mu2_fixed);
    else if (!args.mu2_range.empty()) mu2s = parse_range(args.mu2_range).samples();
    else throw std::invalid_argument("--curve H0 requires --mu2 (flag --mu2)");
    for (double mu2 : mu2s) {
      for (double mu1 : h0_mu1(mu2, args.d)) {
        if (args.mu2_fixed) std::cout << format_g17(mu1) << '\n';
        rows.push_back({mu1, mu2});
      }
    }
  } else if (*tag == CurveTag::B1Zero) {
    std::vector<double> phis;
    bool single = args.phi_range.empty();
    if (single) phis.push_back(args.phi);
    else phis = parse_range(args.phi_range).samples();
    for (double phi : phis) {
      const double m2 = b1_zero_m2(phi);
      if (single) std::cout << format_g17(m2) << '\n';
      CurveId lphi{CurveTag::LPhi, args.nu, args.branch, 1, phi};
      for (double m1 : curve_m1(lphi, m2)) rows.push_back({m1, m2});
    }
  } else {
    if (args.m2_range.empty())
      throw std::invalid_argument("this curve requires an --m2 range lo:hi:count (flag --m2)");
    const CurveId id{*tag, args.nu, args.branch, args.i, args.phi};
    const auto m2s = parse_range(args.m2_range).samples();
    if (args.pullback) {
      if (args.model_path.empty())
        throw std::invalid_argument("--pullback requires --model (flag --model)");
      const ModelFamily model = load_model(args.model_path);
      col1 = "mu1";
      col2 = "mu2";
      for (const auto& mu : pullback_curve(id, model, args.k, m2s)) rows.push_back(mu);
    } else {
      for (double m2 : m2s)
        for (double m1 : curve_m1(id, m2)) rows.push_back({m1, m2});
    }
  }

  if (!args.output.empty()) {
    auto f = open_output(args.output);
    emit_rows(f, args.curve, args.nu, args.branch, col1, col2, rows);
    if (!f.good()) throw std::runtime_error("write failed for '" + args.output + "'");
  } else if (*tag != CurveTag::NonTwist && !args.mu2_fixed && args.phi_range.empty() &&
             *tag != CurveTag::B1Zero) {
    emit_rows(std::cout, args.curve, args.nu, args.branch, col1, col2, rows);
  }
  return 0;
}

// ------------------------------------------------------------------ scan ---

struct ScanArgs {
  int nu = +1;
  int period = 1;
  bool symmetric = false;
  std::string m1_spec;
  std::string m2_spec;
  int steps = 41;
  std::string output;
};

int run_scan(const ScanArgs& args) {
  const bool m1_is_range = args.m1_spec.find(':') != std::string::npos;
  const bool m2_is_range = args.m2_spec.find(':') != std::string::npos;
  if (args.m1_spec.empty() || args.m2_spec.empty() || m1_is_range == m2_is_range)
    throw std::invalid_argument(
        "scan needs exactly one of --m1/--m2 as a range lo:hi:count and the other fixed");

  const Range range = parse_range(m1_is_range ? args.m1_spec : args.m2_spec);
  const double fixed = std::stod(m1_is_range ? args.m2_spec : args.m1_spec);
  const int nu = args.nu;

  MapFamily family;
  if (m1_is_range)
    family = [nu, fixed](double m1) { return CubicHenonMap(nu, m1, fixed); };
  else
    family = [nu, fixed](double m2) { return CubicHenonMap(nu, fixed, m2); };

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.output.empty()) {
    file = open_output(args.output);
    out = &file;
  }
  *out << "param,kind,period,x,y\n";
  if (range.count == 0) return 0;

  ScanOptions opts;
  opts.symmetric_seeding = args.symmetric;
  const int steps = std::max(args.steps, 2);
  const auto res = scan_bifurcations(family, args.period, range.lo, range.hi, steps, opts);
  for (const auto& ev : res.events) {
    const PlanePoint p = ev.orbit_before ? ev.orbit_before->points[0] : PlanePoint{0.0, 0.0};
    *out << format_g17(ev.parameter_value) << ',' << to_string(ev.kind) << ',' << ev.period << ','
         << format_g17(p.x) << ',' << format_g17(p.y) << '\n';
  }
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
  if (!out->good()) throw std::runtime_error("scan output write failed");
  return res.warnings.empty() ? 0 : 1;
}

// --------------------------------------------------------------- rescale ---

struct RescaleArgs {
  std::string model_path;
  std::string k_range = "2:24";
  double box = 2.0;
  int grid = 33;
  std::optional<double> target_m1;
  std::optional<double> target_m2;
  std::string output;
};

int run_rescale(const RescaleArgs& args) {
  ModelFamily model = load_model(args.model_path);
  int k_lo = 0, k_hi = 0;
  parse_int_pair(args.k_range, &k_lo, &k_hi);
  if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("--k range must satisfy 1 <= lo <= hi");
  if (args.target_m1.has_value() != args.target_m2.has_value())
    throw std::invalid_argument("--target-m1 and --target-m2 must be given together");

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.output.empty()) {
    file = open_output(args.output);
    out = &file;
  }
  *out << "k,sup_error,m1,m2,nu\n";
  for (int k = k_lo; k <= k_hi; ++k) {
    ModelFamily m = model;
    if (args.target_m1)
      mu_from_rescaled(model, k, *args.target_m1, *args.target_m2, &m.mu1, &m.mu2);
    const RescaledReturn ret(m, k);
    *out << k << ',' << format_g17(ret.henon_sup_distance(args.box, args.grid)) << ','
         << format_g17(ret.m1()) << ',' << format_g17(ret.m2()) << ',' << ret.nu() << '\n';
  }
  if (!out->good()) throw std::runtime_error("rescale output write failed");
  return 0;
}

// ------------------------------------------------------------- resonance ---

int run_resonance(int nu, double m2) {
  const ResonanceData data = resonance_coefficients(nu, m2);
  std::cout << "b1=" << format_g17(data.b1) << '\n';
  std::cout << "b03=" << format_g17(data.b03) << '\n';
  std::cout << "A=" << format_g17(data.a_ratio) << '\n';
  const char* deg = data.degeneracy == Degeneracy::None ? "none"
                    : data.degeneracy == Degeneracy::B03Zero ? "B03zero"
                                                             : "A=1";
  std::cout << "degeneracy=" << deg << '\n';
  switch (classify_resonant_point(nu, m2)) {
    case ResonantPointClass::EllipticType: std::cout << "class=elliptic_type\n"; break;
    case ResonantPointClass::SaddleEightSeparatrices: std::cout << "class=saddle_8_separatrices\n"; break;
    case ResonantPointClass::Degenerate: std::cout << "class=degenerate\n"; break;
  }
  return 0;
}

// -------------------------------------------------------------- portrait ---

struct PortraitArgs {
  int nu = +1;
  double m1 = 0.0, m2 = 0.0;
  std::string grid_spec;
  std::vector<std::string> seed_specs;
  std::vector<std::string> ring_specs;
  int iterations = 2000;
  double escape = 10.0;
  std::string csv_path;
  std::string svg_path;
};

int run_portrait(const PortraitArgs& args) {
  std::vector<PlanePoint> seeds;
  if (!args.grid_spec.empty()) {
    // x0:x1:nx,y0:y1:ny
    const auto comma = args.grid_spec.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--grid expects x0:x1:nx,y0:y1:ny");
    const Range rx = parse_range(args.grid_spec.substr(0, comma));
    const Range ry = parse_range(args.grid_spec.substr(comma + 1));
    SeedGrid g{rx.lo, rx.hi, rx.count, ry.lo, ry.hi, ry.count};
    for (const auto& s : grid_seeds(g)) seeds.push_back(s);
  }
  for (const auto& spec : args.seed_specs) {
    double x = 0.0, y = 0.0;
    char c = 0;
    std::istringstream in(spec);
    if (!(in >> x >> c >> y) || c != ',') throw std::invalid_argument("--seed expects x,y");
    seeds.push_back({x, y});
  }
  for (const auto& spec : args.ring_specs) {
    double cx = 0.0, cy = 0.0, r = 0.0;
    int n = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream in(spec);
    if (!(in >> cx >> c1 >> cy >> c2 >> r >> c3 >> n) || c1 != ',' || c2 != ',' || c3 != ',' || n < 1)
      throw std::invalid_argument("--ring expects cx,cy,radius,count");
    for (const auto& s : ring_seeds({cx, cy}, r, n)) seeds.push_back(s);
  }
  if (args.csv_path.empty() && args.svg_path.empty())
    throw std::invalid_argument("portrait needs at least one of --csv/--svg");

  const PortraitSpec spec(CubicHenonMap(args.nu, args.m1, args.m2), seeds, args.iterations,
                          args.escape);
  const auto sampled = sample(spec);
  if (!args.csv_path.empty()) export_csv(sampled, args.csv_path);
  if (!args.svg_path.empty()) export_svg(sampled, args.svg_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bifurcation toolkit for conservative cubic Henon maps"};
  app.require_subcommand(1);

  CurvesArgs curves;
  auto* cmd_curves = app.add_subcommand("curves", "evaluate analytic bifurcation curves");
  cmd_curves->add_option("--curve", curves.curve, "curve tag")->required();
  cmd_curves->add_option("--nu", curves.nu, "map sign (+1 or -1)");
  cmd_curves->add_option("--branch", curves.branch, "branch filter (-1, 0, +1)");
  cmd_curves->add_option("--i", curves.i, "member index for L2plusI / L2minusI");
  cmd_curves->add_option("--phi", curves.phi, "angle for Lphi / B1zero");
  cmd_curves->add_option("--phi-range", curves.phi_range, "phi range lo:hi:count (B1zero)");
  cmd_curves->add_option("--m2", curves.m2_range, "m2 range lo:hi:count (or lo:hi:count for nontwist root search)");
  cmd_curves->add_option("--m1", curves.m1_fixed, "fixed m1 (nontwist root listing)");
  cmd_curves->add_option("--mu2", curves.mu2_fixed, "fixed mu2 (H0)");
  cmd_curves->add_option("--mu2-range", curves.mu2_range, "mu2 range lo:hi:count (H0)");
  cmd_curves->add_option("--d", curves.d, "cubic coefficient d (H0)");
  cmd_curves->add_option("--sign", curves.sign, "nontwist sign (+1 or -1)")
      ->transform(CLI::Transformer(std::map<std::string, int>{{"+", 1}, {"-", -1}, {"1", 1}, {"-1", -1}, {"+1", 1}}));
  cmd_curves->add_flag("--pullback", curves.pullback, "emit (mu1, mu2) through the rescaling relations");
  cmd_curves->add_option("--model", curves.model_path, "model JSON (for --pullback)");
  cmd_curves->add_option("--k", curves.k, "return number k (for --pullback)");
  cmd_curves->add_option("-o,--output", curves.output, "CSV output path");

  ScanArgs scan;
  auto* cmd_scan = app.add_subcommand("scan", "brute-force bifurcation scan along one parameter");
  cmd_scan->add_option("--nu", scan.nu, "map sign (+1 or -1)")->required();
  cmd_scan->add_option("--period", scan.period, "orbit period to track");
  cmd_scan->add_flag("--symmetric", scan.symmetric, "seed branches from the x = y line");
  cmd_scan->add_option("--m1", scan.m1_spec, "fixed value or range lo:hi:count")->required();
  cmd_scan->add_option("--m2", scan.m2_spec, "fixed value or range lo:hi:count")->required();
  cmd_scan->add_option("--steps", scan.steps, "continuation steps");
  cmd_scan->add_option("-o,--output", scan.output, "CSV output path");

  RescaleArgs rescale;
  auto* cmd_rescale = app.add_subcommand("rescale", "return-map convergence table");
  cmd_rescale->add_option("--model", rescale.model_path, "model JSON path")->required();
  cmd_rescale->add_option("--k", rescale.k_range, "k range lo:hi");
  cmd_rescale->add_option("--box", rescale.box, "half-width of the comparison box");
  cmd_rescale->add_option("--grid", rescale.grid, "grid points per axis");
  cmd_rescale->add_option("--target-m1", rescale.target_m1, "hold this rescaled m1 for every k");
  cmd_rescale->add_option("--target-m2", rescale.target_m2, "hold this rescaled m2 for every k");
  cmd_rescale->add_option("-o,--output", rescale.output, "CSV output path");

  int res_nu = +1;
  double res_m2 = 0.0;
  auto* cmd_res = app.add_subcommand("resonance", "1:4 resonance coefficient report");
  cmd_res->add_option("--nu", res_nu, "map sign (+1 or -1)")->required();
  cmd_res->add_option("--m2", res_m2, "m2 on the pi/2 resonance curve")->required();

  PortraitArgs portrait;
  auto* cmd_portrait = app.add_subcommand("portrait", "orbit-cloud phase portrait");
  cmd_portrait->add_option("--nu", portrait.nu, "map sign (+1 or -1)")->required();
  cmd_portrait->add_option("--m1", portrait.m1, "m1")->required();
  cmd_portrait->add_option("--m2", portrait.m2, "m2")->required();
  cmd_portrait->add_option("--grid", portrait.grid_spec, "seed grid x0:x1:nx,y0:y1:ny");
  cmd_portrait->add_option("--seed", portrait.seed_specs, "seed point x,y (repeatable)");
  cmd_portrait->add_option("--ring", portrait.ring_specs, "seed ring cx,cy,radius,count (repeatable)");
  cmd_portrait->add_option("--iters", portrait.iterations, "iterations per seed");
  cmd_portrait->add_option("--escape", portrait.escape, "escape radius");
  cmd_portrait->add_option("--csv", portrait.csv_path, "CSV output path");
  cmd_portrait->add_option("--svg", portrait.svg_path, "SVG output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (*cmd_curves) return run_curves(curves);
    if (*cmd_scan) return run_scan(scan);
    if (*cmd_rescale) return run_rescale(rescale);
    if (*cmd_res) return run_resonance(res_nu, res_m2);
    if (*cmd_portrait) return run_portrait(portrait);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
