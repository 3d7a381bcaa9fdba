#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "avsearch/errors.hpp"
#include "avsearch/field_grid.hpp"

namespace avsearch {

/// Point or displacement in degrees of visual angle, world frame.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
  friend WorldPoint operator+(WorldPoint a, WorldPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend WorldPoint operator-(WorldPoint a, WorldPoint b) { return {a.x - b.x, a.y - b.y}; }
};

inline double distance(WorldPoint a, WorldPoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Identical stimuli on a blackboard; amplitude and width are shared by all.
struct Scene {
  std::vector<WorldPoint> stimuli;
  double amplitude = 1.0;
  double width_deg = 1.0;

  void validate() const {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw ConfigError("scene amplitude must be > 0");
    if (!(width_deg > 0.0) || !std::isfinite(width_deg)) throw ConfigError("scene width_deg must be > 0");
    for (std::size_t i = 0; i < stimuli.size(); ++i) {
      if (!std::isfinite(stimuli[i].x) || !std::isfinite(stimuli[i].y)) {
        throw ConfigError("stimulus " + std::to_string(i) + " has a non-finite coordinate");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (stimuli[i] == stimuli[j]) {
          throw ConfigError("stimuli " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
        }
      }
    }
  }
};

struct GazeState {
  WorldPoint gaze;
  double cell_size_deg = 0.5;

  void validate() const {
    if (!std::isfinite(gaze.x) || !std::isfinite(gaze.y)) throw ConfigError("gaze must be finite");
    if (!(cell_size_deg > 0.0) || !std::isfinite(cell_size_deg)) throw ConfigError("cell_size_deg must be > 0");
  }
};

/// Continuous retinal coordinates (in cells, origin at cell 0) of a world point.
inline WorldPoint retinal_position(WorldPoint p, const GazeState& g, int n) {
  const double c = n / 2;
  return {c + (p.x - g.gaze.x) / g.cell_size_deg, c + (p.y - g.gaze.y) / g.cell_size_deg};
}

/// Nearest retinal cell of a world point, or nothing when it is off the field.
inline std::optional<Cell> world_to_retina(WorldPoint p, const GazeState& g, int n) {
  g.validate();
  const WorldPoint r = retinal_position(p, g, n);
  const Cell cell{static_cast<int>(std::lround(r.x)), static_cast<int>(std::lround(r.y))};
  if (cell.x < 0 || cell.y < 0 || cell.x >= n || cell.y >= n) return std::nullopt;
  return cell;
}

/// World point seen at a retinal cell.
inline WorldPoint retina_to_world(Cell cell, const GazeState& g, int n) {
  const int c = n / 2;
  return {g.gaze.x + (cell.x - c) * g.cell_size_deg, g.gaze.y + (cell.y - c) * g.cell_size_deg};
}

/// Gaussian bump per stimulus, evaluated per cell so off-field stimuli still
/// leave their in-field tails; the sum is clamped to the activity bound.
inline FieldGrid render_saliency(const Scene& scene, const GazeState& g, int n) {
  scene.validate();
  g.validate();
  FieldGrid out(n);
  const double w = scene.width_deg / g.cell_size_deg;
  for (const auto& s : scene.stimuli) {
    const WorldPoint r = retinal_position(s, g, n);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double dx = x - r.x;
        const double dy = y - r.y;
        out(x, y) += scene.amplitude * std::exp(-(dx * dx + dy * dy) / (w * w));
      }
    }
  }
  for (double& v : out.values()) v = std::min(v, kActivityMax);
  return out;
}

/// No visual information during the eye movement.
inline FieldGrid blank_saliency(int n) { return FieldGrid(n); }

}  // namespace avsearch
