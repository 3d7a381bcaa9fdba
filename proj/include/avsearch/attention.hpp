#pragma once

#include <optional>

#include "avsearch/bumps.hpp"
#include "avsearch/network.hpp"
#include "avsearch/perception.hpp"

namespace avsearch {

/// Eye movement that brings the focused location onto the fovea.
struct SaccadePlan {
  WorldPoint displacement;  // degrees, world frame
  Cell target_cell;
};

/// Reads the saccade target from the focus bump; a bump on the center cell
/// yields a zero displacement, which is a legal (re)fixation plan.
inline std::optional<SaccadePlan> decode_saccade(const FieldGrid& focus, const GazeState& g, double theta_bump) {
  g.validate();
  const auto bump = detect_bump(focus, theta_bump);
  if (!bump) return std::nullopt;
  const Cell c = focus.center();
  return SaccadePlan{{(bump->cell.x - c.x) * g.cell_size_deg, (bump->cell.y - c.y) * g.cell_size_deg}, bump->cell};
}

/// Releases the current target: a uniform inhibition plateau on the switch
/// map for `duration_ticks`, after which the map decays on its own time constant.
inline Network& trigger_switch(Network& net, int duration_ticks) {
  net.engage_switch(duration_ticks);
  return net;
}

/// Settle predicate: map `id` holds exactly one suprathreshold region.
inline SettleCriterion single_bump(MapId id, double theta_bump) {
  return [id, theta_bump](const Network&, const Network& after) {
    return count_bumps(after.activity(id), theta_bump) == 1;
  };
}

}  // namespace avsearch
