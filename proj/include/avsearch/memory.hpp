#pragma once

#include "avsearch/bumps.hpp"
#include "avsearch/network.hpp"

namespace avsearch {

inline constexpr double kMemoryProbeRadius = 2.0;

/// True when the working memory holds a suprathreshold unit within two cells of `cell`.
inline bool memorize_check(const Network& net, Cell cell, double theta_bump) {
  const auto& wm = net.activity(MapId::wm);
  if (!wm.contains(cell)) throw ConfigError("memorize_check: cell outside the grid");
  const int r = static_cast<int>(kMemoryProbeRadius);
  double best = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy > kMemoryProbeRadius * kMemoryProbeRadius) continue;
      const Cell q{cell.x + dx, cell.y + dy};
      if (wm.contains(q)) best = std::max(best, wm[q]);
    }
  }
  return best >= theta_bump;
}

inline int count_memory_bumps(const Network& net, double theta_bump) {
  return count_bumps(net.activity(MapId::wm), theta_bump);
}

}  // namespace avsearch
