#include "biflab/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "biflab/util.hpp"

namespace biflab {

std::vector<PlanePoint> grid_seeds(const SeedGrid& g) {
  if (g.nx < 1 || g.ny < 1) throw std::invalid_argument("grid_seeds: counts must be >= 1");
  std::vector<PlanePoint> seeds;
  seeds.reserve(static_cast<size_t>(g.nx) * static_cast<size_t>(g.ny));
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double x = g.nx == 1 ? g.x_lo : g.x_lo + (g.x_hi - g.x_lo) * i / (g.nx - 1);
      const double y = g.ny == 1 ? g.y_lo : g.y_lo + (g.y_hi - g.y_lo) * j / (g.ny - 1);
      seeds.push_back({x, y});
    }
  }
  return seeds;
}

std::vector<PlanePoint> ring_seeds(const PlanePoint& center, double radius, int count) {
  std::vector<PlanePoint> seeds;
  seeds.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double a = 2.0 * 3.14159265358979323846 * i / count;
    seeds.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return seeds;
}

std::vector<SampledOrbit> sample(const PortraitSpec& spec) {
  std::vector<SampledOrbit> out(spec.seeds.size());
  parallel_for(static_cast<int>(spec.seeds.size()), [&](int s) {
    SampledOrbit& orbit = out[static_cast<size_t>(s)];
    orbit.seed_id = s;
    orbit.points.reserve(static_cast<size_t>(spec.iterations) + 1);
    PlanePoint p = spec.seeds[static_cast<size_t>(s)];
    orbit.points.push_back(p);
    for (int it = 0; it < spec.iterations; ++it) {
      p = apply(spec.map, p);
      if (!is_finite(p) || norm(p) > spec.escape_radius) {
        orbit.escaped = true;
        if (is_finite(p)) orbit.points.push_back(p);
        break;
      }
      orbit.points.push_back(p);
    }
  });
  return out;
}

void export_csv(const std::vector<SampledOrbit>& sampled, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("export_csv: cannot open '" + path + "' for writing");
  f << "seed_id,iter,x,y,escaped\n";
  for (const auto& orbit : sampled) {
    for (size_t i = 0; i < orbit.points.size(); ++i) {
      const bool last = i + 1 == orbit.points.size();
      f << orbit.seed_id << ',' << i << ',' << format_g17(orbit.points[i].x) << ','
        << format_g17(orbit.points[i].y) << ',' << (orbit.escaped && last ? 1 : 0) << '\n';
    }
  }
  if (!f.good()) throw std::runtime_error("export_csv: write failed for '" + path + "'");
}

void export_svg(const std::vector<SampledOrbit>& sampled, const std::string& path) {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  bool first = true;
  for (const auto& orbit : sampled) {
    for (const auto& p : orbit.points) {
      if (first) {
        x_lo = x_hi = p.x;
        y_lo = y_hi = p.y;
        first = false;
      } else {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
      }
    }
  }
  const double spanx = std::max(x_hi - x_lo, 1e-9);
  const double spany = std::max(y_hi - y_lo, 1e-9);
  const double margin = 0.05 * std::max(spanx, spany);
  const double w = spanx + 2.0 * margin, h = spany + 2.0 * margin;
  const double r = 0.0025 * std::max(w, h);

  static const char* kPalette[] = {"#1b6ca8", "#c0392b", "#1e8449", "#7d3c98",
                                   "#b7950b", "#117a65", "#a04000", "#2e4053"};
  char buf[64];
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 ";
  std::snprintf(buf, sizeof(buf), "%.6g %.6g", w, h);
  svg << buf << "\">\n";
  for (const auto& orbit : sampled) {
    svg << "<g id=\"seed" << orbit.seed_id << "\" fill=\""
        << kPalette[static_cast<size_t>(orbit.seed_id) % 8] << "\">\n";
    for (const auto& p : orbit.points) {
      // SVG y grows downward; flip so the portrait reads like the plane.
      const double cx = p.x - x_lo + margin;
      const double cy = (y_hi - p.y) + margin;
      std::snprintf(buf, sizeof(buf), "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"%.6g\"/>\n", cx, cy, r);
      svg << buf;
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("export_svg: cannot open '" + path + "' for writing");
  f << svg.str();
  if (!f.good()) throw std::runtime_error("export_svg: write failed for '" + path + "'");
}

}  // namespace biflab
