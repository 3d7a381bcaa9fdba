#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "avsearch/attention.hpp"
#include "avsearch/bumps.hpp"
#include "avsearch/memory.hpp"
#include "avsearch/network.hpp"
#include "avsearch/perception.hpp"
#include "avsearch/sim_config.hpp"

namespace avsearch {

enum class TrialPhase { Settling, PreSaccade, SaccadeBlank, PostSaccade, Switching, Done, Failed };

inline constexpr std::string_view to_string(TrialPhase p) {
  switch (p) {
    case TrialPhase::Settling: return "Settling";
    case TrialPhase::PreSaccade: return "PreSaccade";
    case TrialPhase::SaccadeBlank: return "SaccadeBlank";
    case TrialPhase::PostSaccade: return "PostSaccade";
    case TrialPhase::Switching: return "Switching";
    case TrialPhase::Done: return "Done";
    case TrialPhase::Failed: return "Failed";
  }
  return "?";
}

/// Settling→PreSaccade→SaccadeBlank→PostSaccade→Switching→Settling; any phase may end in Done or Failed.
inline constexpr bool legal_transition(TrialPhase from, TrialPhase to) {
  if (to == TrialPhase::Done || to == TrialPhase::Failed) return from != TrialPhase::Done && from != TrialPhase::Failed;
  switch (from) {
    case TrialPhase::Settling: return to == TrialPhase::PreSaccade;
    case TrialPhase::PreSaccade: return to == TrialPhase::SaccadeBlank;
    case TrialPhase::SaccadeBlank: return to == TrialPhase::PostSaccade;
    case TrialPhase::PostSaccade: return to == TrialPhase::Switching;
    case TrialPhase::Switching: return to == TrialPhase::Settling;
    default: return false;
  }
}

enum class Outcome { AllScannedOnce, Done, Refixation, MissedStimuli, NonConvergence, Failed };

inline constexpr std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::AllScannedOnce: return "AllScannedOnce";
    case Outcome::Done: return "Done";
    case Outcome::Refixation: return "Refixation";
    case Outcome::MissedStimuli: return "MissedStimuli";
    case Outcome::NonConvergence: return "NonConvergence";
    case Outcome::Failed: return "Failed";
  }
  return "?";
}

struct Fixation {
  std::size_t stimulus = 0;
  long tick = 0;
  Cell target_cell;
};

/// Map summary at the last tick of a phase.
struct PhaseRecord {
  TrialPhase phase = TrialPhase::Settling;
  long start_tick = 0;
  long end_tick = 0;
  WorldPoint gaze;
  std::array<int, kMapCount> bumps{};    // suprathreshold regions per map
  std::array<double, kMapCount> peak{};  // max activity per map
};

struct ScanMetrics {
  std::vector<Fixation> fixations;
  std::vector<int> per_stimulus_counts;
  long total_ticks = 0;
  Outcome outcome = Outcome::Done;
  std::optional<std::size_t> refixated;  // first stimulus fixated twice
  std::vector<std::size_t> missed;
  std::string reason;
  std::vector<PhaseRecord> phases;
  bool finite = true;  // no NaN/inf observed in any map
};

/// State handed to observers after every tick and at every phase end.
struct TrialFrame {
  long tick = 0;
  TrialPhase phase = TrialPhase::Settling;
  WorldPoint gaze;
  const Network& net;
  bool phase_end = false;
};

using TrialObserver = std::function<void(const TrialFrame&)>;

namespace detail {

inline bool focus_committed(const Network& net, double commit) {
  const auto regions = find_regions(net.activity(MapId::focus), net.spec().theta_bump);
  return regions.size() == 1 && regions.front().peak >= commit;
}

/// Every memory that stays on the field after the planned saccade has its
/// remapped copy (c + y - target) in the anticipation map at `ready` or above.
inline bool prediction_ready(const Network& net, double ready) {
  const double theta = net.spec().theta_bump;
  const auto memorized = find_regions(net.activity(MapId::wm), theta);
  if (memorized.empty()) return false;
  const auto target = detect_bump(net.activity(MapId::focus), theta);
  if (!target) return false;
  const auto& antic = net.activity(MapId::anticipation);
  const int c = antic.center_index();
  for (const Region& r : memorized) {
    const Cell predicted{c + r.centroid.x - target->cell.x, c + r.centroid.y - target->cell.y};
    if (antic.contains(predicted) && antic[predicted] < ready) return false;
  }
  return true;
}

class TrialRun {
 public:
  TrialRun(const Scene& scene, const SimConfig& cfg, std::uint64_t seed, const TrialObserver& observer)
      : scene_(scene), cfg_(cfg), net_(cfg.network), rng_(seed), observer_(observer) {
    gaze_ = {{cfg.trial.initial_gaze_x, cfg.trial.initial_gaze_y}, cfg.perception.cell_size_deg};
    metrics_.per_stimulus_counts.assign(scene.stimuli.size(), 0);
  }

  ScanMetrics run() {
    const int n = net_.size();
    const auto& trial = cfg_.trial;
    const std::size_t max_fixations = 2 * scene_.stimuli.size();
    emit(false);

    while (true) {
      // (a) competition for the next target
      begin(TrialPhase::Settling);
      FieldGrid afferent = render_saliency(scene_, gaze_, n);
      bool committed = false;
      for (long t = 0; t < trial.settle_max_ticks && !out_of_time(); ++t) {
        step(afferent);
        if (focus_committed(net_, trial.focus_commit)) {
          committed = true;
          break;
        }
      }
      end();
      if (out_of_time()) return finish(TrialPhase::Done, Outcome::NonConvergence, "max_total_ticks reached");
      if (!committed) return finish(TrialPhase::Done, std::nullopt, "no target emerged");

      const auto plan = decode_saccade(net_.activity(MapId::focus), gaze_, cfg_.network.theta_bump);
      const WorldPoint target = gaze_.gaze + plan->displacement;
      const auto [nearest, dist] = nearest_stimulus(target);
      if (dist > trial.fixation_tolerance_cells * gaze_.cell_size_deg) {
        return finish(TrialPhase::Failed, Outcome::Failed,
                      "decoded target is " + std::to_string(dist / gaze_.cell_size_deg) +
                          " cells from the nearest stimulus");
      }
      metrics_.fixations.push_back({nearest, tick_, plan->target_cell});
      if (++metrics_.per_stimulus_counts[nearest] > 1 && !metrics_.refixated) metrics_.refixated = nearest;
      const bool all_seen = std::all_of(metrics_.per_stimulus_counts.begin(), metrics_.per_stimulus_counts.end(),
                                        [](int c) { return c > 0; });
      if (all_seen || metrics_.fixations.size() >= max_fixations) return finish(TrialPhase::Done, std::nullopt, "");

      // (b) prediction of the post-saccadic memory
      begin(TrialPhase::PreSaccade);
      for (long t = 0; t < trial.presaccade_max_ticks && !out_of_time(); ++t) {
        step(afferent);
        if (t + 1 >= trial.presaccade_min_ticks && prediction_ready(net_, trial.prediction_ready)) break;
      }
      end();

      // (c) eye movement: no visual input, then the gaze jumps
      begin(TrialPhase::SaccadeBlank);
      if (trial.suppress_during_saccade) {
        net_.engage_switch(static_cast<int>(std::max<long>(1, trial.blank_ticks + trial.postsaccade_ticks)));
      }
      const FieldGrid blank = blank_saliency(n);
      for (long t = 0; t < trial.blank_ticks && !out_of_time(); ++t) step(blank);
      WorldPoint landing = plan->displacement;
      if (trial.motor_noise_deg > 0.0) {
        std::normal_distribution<double> motor(0.0, trial.motor_noise_deg);
        landing.x += motor(rng_);
        landing.y += motor(rng_);
      }
      end();
      gaze_.gaze = gaze_.gaze + landing;

      // (d) memory is rebuilt from the prediction and the new view
      begin(TrialPhase::PostSaccade);
      afferent = render_saliency(scene_, gaze_, n);
      for (long t = 0; t < trial.postsaccade_ticks && !out_of_time(); ++t) step(afferent);
      end();

      // (e) release the fixated target
      begin(TrialPhase::Switching);
      trigger_switch(net_, cfg_.network.switch_ticks);
      for (long t = 0; t < cfg_.network.switch_ticks && !out_of_time(); ++t) step(afferent);
      end();
      if (out_of_time()) return finish(TrialPhase::Done, Outcome::NonConvergence, "max_total_ticks reached");
    }
  }

 private:
  bool out_of_time() const { return tick_ >= cfg_.trial.max_total_ticks; }

  void step(const FieldGrid& afferent) {
    net_.tick(afferent, rng_);
    ++tick_;
    emit(false);
  }

  void emit(bool phase_end) {
    if (observer_) observer_(TrialFrame{tick_, phase_, gaze_.gaze, net_, phase_end});
  }

  void begin(TrialPhase p) {
    phase_ = p;
    phase_start_ = tick_;
  }

  void end() {
    PhaseRecord rec{phase_, phase_start_, tick_, gaze_.gaze, {}, {}};
    for (MapId id : kAllMaps) {
      const auto& g = net_.activity(id);
      rec.bumps[index_of(id)] = count_bumps(g, cfg_.network.theta_bump);
      rec.peak[index_of(id)] = g.max();
    }
    metrics_.phases.push_back(rec);
    if (!net_.all_finite()) metrics_.finite = false;
    emit(true);
  }

  std::pair<std::size_t, double> nearest_stimulus(WorldPoint p) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scene_.stimuli.size(); ++i) {
      const double d = distance(p, scene_.stimuli[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return {best, best_d};
  }

  ScanMetrics finish(TrialPhase terminal, std::optional<Outcome> forced, std::string reason) {
    phase_ = terminal;
    metrics_.total_ticks = tick_;
    metrics_.reason = std::move(reason);
    for (std::size_t i = 0; i < metrics_.per_stimulus_counts.size(); ++i) {
      if (metrics_.per_stimulus_counts[i] == 0) metrics_.missed.push_back(i);
    }
    if (forced) {
      metrics_.outcome = *forced;
    } else if (scene_.stimuli.empty()) {
      metrics_.outcome = Outcome::Done;
    } else if (metrics_.refixated) {
      metrics_.outcome = Outcome::Refixation;
    } else if (!metrics_.missed.empty()) {
      metrics_.outcome = Outcome::MissedStimuli;
    } else {
      metrics_.outcome = Outcome::AllScannedOnce;
    }
    if (!net_.all_finite()) metrics_.finite = false;
    emit(true);
    return std::move(metrics_);
  }

  const Scene& scene_;
  const SimConfig& cfg_;
  Network net_;
  std::mt19937_64 rng_;
  const TrialObserver& observer_;
  GazeState gaze_;
  ScanMetrics metrics_;
  TrialPhase phase_ = TrialPhase::Settling;
  long phase_start_ = 0;
  long tick_ = 0;
};

}  // namespace detail

/// One overt scan of `scene`: settle, fixate, anticipate, saccade through a
/// blank, rebuild memory, switch, and repeat until every stimulus has been
/// targeted or a stop condition fires. Failures are outcomes, never throws.
inline ScanMetrics run_trial(const Scene& scene, const SimConfig& cfg, std::uint64_t seed,
                             const TrialObserver& observer = {}) {
  scene.validate();
  cfg.validate();
  return detail::TrialRun(scene, cfg, seed, observer).run();
}

struct BatchSummary {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_fixations = 0.0;
  double mean_ticks = 0.0;
  std::array<std::size_t, 6> outcome_counts{};
  std::vector<ScanMetrics> runs;

  friend bool operator==(const BatchSummary& a, const BatchSummary& b) {
    return a.trials == b.trials && a.successes == b.successes && a.success_rate == b.success_rate &&
           a.mean_fixations == b.mean_fixations && a.mean_ticks == b.mean_ticks &&
           a.outcome_counts == b.outcome_counts;
  }
};

/// Independent trials, one per seed; results are stored in seed order, so the
/// summary does not depend on `jobs`.
inline BatchSummary run_batch(const Scene& scene, const SimConfig& cfg, const std::vector<std::uint64_t>& seeds,
                              unsigned jobs = 1) {
  if (seeds.empty()) throw ConfigError("empty seed list");
  scene.validate();
  cfg.validate();
  BatchSummary s;
  s.runs.resize(seeds.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(seeds.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) s.runs[i] = run_trial(scene, cfg, seeds[i]);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < seeds.size(); i += jobs) s.runs[i] = run_trial(scene, cfg, seeds[i]);
      });
    }
  }
  s.trials = seeds.size();
  double fix = 0.0, ticks = 0.0;
  for (const auto& r : s.runs) {
    if (r.outcome == Outcome::AllScannedOnce) ++s.successes;
    ++s.outcome_counts[static_cast<std::size_t>(r.outcome)];
    fix += static_cast<double>(r.fixations.size());
    ticks += static_cast<double>(r.total_ticks);
  }
  s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
  s.mean_fixations = fix / static_cast<double>(s.trials);
  s.mean_ticks = ticks / static_cast<double>(s.trials);
  return s;
}

}  // namespace avsearch
