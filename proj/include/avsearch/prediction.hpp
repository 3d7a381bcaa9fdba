#pragma once

#include <optional>

#include "avsearch/anticipation.hpp"
#include "avsearch/bumps.hpp"
#include "avsearch/network.hpp"

namespace avsearch {

/// Settled anticipation map for the current memory and focus, holding both
/// fixed: the predicted retinal layout of every memorized stimulus once the
/// saccade toward the focus bump has landed. Nothing when focus has no bump.
inline std::optional<FieldGrid> predict_postsaccadic_memory(const Network& net, int max_iterations = 20000,
                                                            double tolerance = 1e-9) {
  const auto& spec = net.spec();
  const auto& focus = net.activity(MapId::focus);
  if (!detect_bump(focus, spec.theta_bump)) return std::nullopt;
  const FieldGrid input =
      anticipation_input(net.activity(MapId::wm), focus, spec.beta, spec.anticipation_method);
  const auto& step = spec.map(MapId::anticipation).step;
  FieldGrid u = net.activity(MapId::anticipation);
  for (int i = 0; i < max_iterations; ++i) {
    FieldGrid next = step_anticipation(u, input, step);
    const double change = max_abs_difference(next, u);
    u = std::move(next);
    if (change < tolerance) break;
  }
  return u;
}

}  // namespace avsearch
