#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "avsearch/field_grid.hpp"

namespace avsearch {

/// A 4-connected region of activity at or above a threshold.
struct Region {
  int area = 0;
  double mass = 0.0;
  double peak = 0.0;
  Cell centroid;  // activity-weighted, rounded to the nearest cell
};

struct Bump {
  Cell cell;
  double peak = 0.0;
  int area = 0;
};

/// Suprathreshold regions in row-major order of their first cell.
inline std::vector<Region> find_regions(const FieldGrid& grid, double threshold) {
  const int n = grid.size();
  std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<Region> regions;
  std::vector<Cell> stack;
  auto flat = [n](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x); };

  for (int y0 = 0; y0 < n; ++y0) {
    for (int x0 = 0; x0 < n; ++x0) {
      if (seen[flat(x0, y0)] || grid(x0, y0) < threshold) continue;
      Region r;
      double sx = 0.0, sy = 0.0;
      stack.assign(1, {x0, y0});
      seen[flat(x0, y0)] = 1;
      while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        const double v = grid(c.x, c.y);
        ++r.area;
        r.mass += v;
        r.peak = std::max(r.peak, v);
        sx += v * c.x;
        sy += v * c.y;
        const Cell next[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
        for (const Cell& q : next) {
          if (!grid.contains(q) || seen[flat(q.x, q.y)] || grid(q.x, q.y) < threshold) continue;
          seen[flat(q.x, q.y)] = 1;
          stack.push_back(q);
        }
      }
      r.centroid = {static_cast<int>(std::lround(sx / r.mass)), static_cast<int>(std::lround(sy / r.mass))};
      regions.push_back(r);
    }
  }
  return regions;
}

inline int count_bumps(const FieldGrid& grid, double threshold) {
  return static_cast<int>(find_regions(grid, threshold).size());
}

/// Centroid and peak of the largest suprathreshold region (ties: larger mass,
/// then scan order), or nothing when no unit reaches the threshold.
inline std::optional<Bump> detect_bump(const FieldGrid& grid, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("bump threshold must be > 0");
  const auto regions = find_regions(grid, threshold);
  const Region* best = nullptr;
  for (const auto& r : regions) {
    if (!best || r.area > best->area || (r.area == best->area && r.mass > best->mass)) best = &r;
  }
  if (!best) return std::nullopt;
  return Bump{best->centroid, best->peak, best->area};
}

}  // namespace avsearch
