#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "avsearch/avsearch.hpp"

namespace avsearch::testing {

inline std::filesystem::path source_dir() { return AVSEARCH_SOURCE_DIR; }

inline FieldGrid random_grid(int n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  FieldGrid g(n);
  for (double& v : g.values()) v = dist(rng);
  return g;
}

inline FieldGrid delta(int n, int x, int y, double value = 1.0) {
  FieldGrid g(n);
  g(x, y) = value;
  return g;
}

/// Isotropic bump value * exp(-d^2 / width^2) centered on (cx, cy).
inline FieldGrid gaussian_bump(int n, int cx, int cy, double value, double width) {
  FieldGrid g(n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double d2 = double(x - cx) * (x - cx) + double(y - cy) * (y - cy);
      g(x, y) = value * std::exp(-d2 / (width * width));
    }
  }
  return g;
}

inline std::vector<WorldPoint> canonical_stimuli() {
  return load_scene((source_dir() / "scenes" / "three.scene").string());
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("avsearch_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace avsearch::testing
