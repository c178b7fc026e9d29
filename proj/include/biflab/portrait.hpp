// Phase-portrait sampling (orbit clouds) for the cubic Henon maps, with
// deterministic CSV and SVG scatter export.
#pragma once

#include <string>
#include <vector>

#include "biflab/core_maps.hpp"

namespace biflab {

struct SeedGrid {
  double x_lo = -1.0, x_hi = 1.0;
  int nx = 10;
  double y_lo = -1.0, y_hi = 1.0;
  int ny = 10;
};

std::vector<PlanePoint> grid_seeds(const SeedGrid& g);

// Ring of seeds around a center, handy for island chains.
std::vector<PlanePoint> ring_seeds(const PlanePoint& center, double radius, int count);

struct PortraitSpec {
  CubicHenonMap map;
  std::vector<PlanePoint> seeds;
  int iterations = 2000;
  double escape_radius = 10.0;

  PortraitSpec(const CubicHenonMap& map_, std::vector<PlanePoint> seeds_, int iterations_ = 2000,
               double escape_radius_ = 10.0)
      : map(map_), seeds(std::move(seeds_)), iterations(iterations_), escape_radius(escape_radius_) {
    if (iterations < 1) throw std::invalid_argument("PortraitSpec: iterations must be >= 1");
    if (escape_radius <= 0.0) throw std::invalid_argument("PortraitSpec: escape radius must be positive");
  }
};

struct SampledOrbit {
  int seed_id = 0;
  std::vector<PlanePoint> points;  // in iteration order, seed included
  bool escaped = false;
};

std::vector<SampledOrbit> sample(const PortraitSpec& spec);

void export_csv(const std::vector<SampledOrbit>& sampled, const std::string& path);
void export_svg(const std::vector<SampledOrbit>& sampled, const std::string& path);

}  // namespace biflab
