#pragma once

#include <cmath>

#include "avsearch/errors.hpp"
#include "avsearch/network.hpp"
#include "avsearch/perception.hpp"

namespace avsearch {

struct PerceptionConfig {
  double cell_size_deg = 0.5;
  double stimulus_amplitude = 1.0;
  double stimulus_width_deg = 1.0;

  friend bool operator==(const PerceptionConfig&, const PerceptionConfig&) = default;
};

/// Timing and stop conditions of one scan trial.
struct TrialConfig {
  double initial_gaze_x = 0.0;
  double initial_gaze_y = 0.0;
  long settle_max_ticks = 1500;     // competition must commit a target within this
  double focus_commit = 0.9;        // peak a lone focus bump needs before it is a target
  long presaccade_min_ticks = 20;
  long presaccade_max_ticks = 600;
  double prediction_ready = 0.8;    // anticipation peak needed to launch the saccade early
  long blank_ticks = 30;
  long postsaccade_ticks = 120;
  bool suppress_during_saccade = true;
  long max_total_ticks = 20000;
  double fixation_tolerance_cells = 2.0;
  double motor_noise_deg = 0.0;

  void validate() const {
    if (!std::isfinite(initial_gaze_x) || !std::isfinite(initial_gaze_y)) {
      throw ConfigError("initial gaze must be finite");
    }
    if (settle_max_ticks <= 0) throw ConfigError("settle_max_ticks must be > 0");
    if (!(focus_commit > 0.0) || focus_commit > kActivityMax) throw ConfigError("focus_commit must be in (0, 1]");
    if (presaccade_min_ticks < 0 || presaccade_max_ticks <= 0 || presaccade_min_ticks > presaccade_max_ticks) {
      throw ConfigError("presaccade ticks must satisfy 0 <= min <= max, max > 0");
    }
    if (!(prediction_ready > 0.0) || prediction_ready > kActivityMax) {
      throw ConfigError("prediction_ready must be in (0, 1]");
    }
    if (blank_ticks < 0) throw ConfigError("blank_ticks must be >= 0");
    if (postsaccade_ticks <= 0) throw ConfigError("postsaccade_ticks must be > 0");
    if (max_total_ticks <= 0) throw ConfigError("max_total_ticks must be > 0");
    if (!(fixation_tolerance_cells >= 0.0)) throw ConfigError("fixation_tolerance_cells must be >= 0");
    if (!(motor_noise_deg >= 0.0)) throw ConfigError("motor_noise_deg must be >= 0");
  }

  friend bool operator==(const TrialConfig&, const TrialConfig&) = default;
};

struct SimConfig {
  NetworkSpec network;
  PerceptionConfig perception;
  TrialConfig trial;

  void validate() const {
    network.validate();
    GazeState{{}, perception.cell_size_deg}.validate();
    if (!(perception.stimulus_amplitude > 0.0)) throw ConfigError("stimulus_amplitude must be > 0");
    if (!(perception.stimulus_width_deg > 0.0)) throw ConfigError("stimulus_width_deg must be > 0");
    trial.validate();
  }

  /// Stimulus positions from a scene file combined with the configured appearance.
  Scene make_scene(std::vector<WorldPoint> stimuli) const {
    Scene s{std::move(stimuli), perception.stimulus_amplitude, perception.stimulus_width_deg};
    s.validate();
    return s;
  }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

inline SimConfig default_sim_config() {
  SimConfig cfg;
  cfg.network = default_network_spec();
  return cfg;
}

}  // namespace avsearch
