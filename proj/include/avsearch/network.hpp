#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "avsearch/anticipation.hpp"
#include "avsearch/errors.hpp"
#include "avsearch/field_grid.hpp"
#include "avsearch/field_step.hpp"
#include "avsearch/kernels.hpp"
#include "avsearch/lattice.hpp"

namespace avsearch {

enum class MapId : std::size_t { saliency, focus, wm, thal_wm, anticipation, switch_inhibition };

inline constexpr std::size_t kMapCount = 6;

inline constexpr std::array<MapId, kMapCount> kAllMaps = {
    MapId::saliency, MapId::focus,        MapId::wm,
    MapId::thal_wm,  MapId::anticipation, MapId::switch_inhibition,
};

inline constexpr std::string_view to_string(MapId id) {
  switch (id) {
    case MapId::saliency: return "saliency";
    case MapId::focus: return "focus";
    case MapId::wm: return "wm";
    case MapId::thal_wm: return "thal_wm";
    case MapId::anticipation: return "anticipation";
    case MapId::switch_inhibition: return "switch_inhibition";
  }
  return "?";
}

inline std::optional<MapId> parse_map_id(std::string_view name) {
  for (MapId id : kAllMaps) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

inline constexpr std::size_t index_of(MapId id) { return static_cast<std::size_t>(id); }

/// sign · Σ_y kernel(x - y)·source(y) into target.
struct SigmaProjection {
  MapId source = MapId::saliency;
  MapId target = MapId::focus;
  GaussianKernel kernel;
  int sign = +1;

  friend bool operator==(const SigmaProjection&, const SigmaProjection&) = default;
};

/// weight · Σ_y spread(x - y)·a(y)·b(y) into target: a conjunction that only
/// fires where both sources are active at the same place.
struct GatedProjection {
  MapId source_a = MapId::saliency;
  MapId source_b = MapId::focus;
  MapId target = MapId::wm;
  double weight = 1.0;
  GaussianKernel spread;

  friend bool operator==(const GatedProjection&, const GatedProjection&) = default;
};

struct MapParams {
  StepParams step;
  std::optional<DoGKernel> lateral;

  friend bool operator==(const MapParams&, const MapParams&) = default;
};

struct NetworkSpec {
  int n = 41;
  std::array<MapParams, kMapCount> maps{};
  std::vector<SigmaProjection> sigma_projections;
  std::vector<GatedProjection> gated_projections;
  double beta = 1.0;             // wm ⊛ focus → anticipation gain
  double noise_amplitude = 0.0;  // uniform [0, amplitude] on the focus input
  std::uint64_t rng_seed = 1;
  double theta_bump = 0.3;
  double theta_off = 0.05;
  double switch_amplitude = 1.0;
  int switch_ticks = 50;
  LateralMethod lateral_method = LateralMethod::Separable;
  CorrelationMethod anticipation_method = CorrelationMethod::Fft;

  MapParams& map(MapId id) { return maps[index_of(id)]; }
  const MapParams& map(MapId id) const { return maps[index_of(id)]; }

  void validate() const {
    if (n <= 0) throw ConfigError("n must be positive");
    if (n % 2 == 0) throw ConfigError("n must be odd");
    for (MapId id : kAllMaps) {
      const auto& m = map(id);
      const std::string where = "map." + std::string(to_string(id));
      m.step.validate(where);
      if (m.lateral) m.lateral->validate(where + ".lateral");
    }
    if (!map(MapId::focus).lateral) throw ConfigError("map.focus: lateral kernel is required");
    map(MapId::focus).lateral->validate_competitive("map.focus.lateral");
    for (std::size_t i = 0; i < sigma_projections.size(); ++i) {
      const auto& p = sigma_projections[i];
      const std::string where = "sigma projection " + std::to_string(i);
      p.kernel.validate(where);
      if (p.sign != 1 && p.sign != -1) throw ConfigError(where + ": sign must be +1 or -1");
      if (p.target == MapId::saliency) throw ConfigError(where + ": saliency only takes afferent input");
    }
    for (std::size_t i = 0; i < gated_projections.size(); ++i) {
      const auto& p = gated_projections[i];
      const std::string where = "gated projection " + std::to_string(i);
      p.spread.validate(where);
      if (!(p.weight > 0.0) || !std::isfinite(p.weight)) throw ConfigError(where + ": weight must be > 0");
      if (p.target == MapId::saliency) throw ConfigError(where + ": saliency only takes afferent input");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be >= 0");
    if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude)) {
      throw ConfigError("noise_amplitude must be >= 0");
    }
    if (!(theta_bump > 0.0) || theta_bump > kActivityMax) throw ConfigError("theta_bump must be in (0, 1]");
    if (!(theta_off > 0.0) || !(theta_off < theta_bump)) {
      throw ConfigError("theta_off must be in (0, theta_bump)");
    }
    if (!(switch_amplitude >= 0.0)) throw ConfigError("switch_amplitude must be >= 0");
    if (switch_ticks <= 0) throw ConfigError("switch_ticks must be > 0");
  }

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Defaults tuned once against the scan experiment and frozen; they are
/// mirrored verbatim by config/default.cfg.
inline NetworkSpec default_network_spec() {
  NetworkSpec s;
  s.n = 41;
  s.map(MapId::saliency).step = {10.0, 1.0, 0.0};
  s.map(MapId::focus).step = {10.0, 1.0, -0.6};
  s.map(MapId::focus).lateral = DoGKernel{0.35, 0.08, 2.0, 20.0};
  s.map(MapId::wm).step = {10.0, 1.0, -0.9};
  s.map(MapId::thal_wm).step = {10.0, 1.0, -1.0};
  s.map(MapId::anticipation).step = {200.0, 1.0, 0.0};
  s.map(MapId::switch_inhibition).step = {10.0, 1.0, 0.0};

  s.sigma_projections = {
      {MapId::saliency, MapId::focus, {0.35, 1.0}, +1},
      {MapId::wm, MapId::focus, {0.065, 1.5}, -1},
      {MapId::switch_inhibition, MapId::focus, {1.0, 1.0}, -1},
      {MapId::wm, MapId::thal_wm, {1.2, 1.5}, +1},
  };
  s.gated_projections = {
      {MapId::saliency, MapId::focus, MapId::wm, 1.0, {0.35, 1.5}},
      {MapId::saliency, MapId::anticipation, MapId::wm, 1.0, {1.2, 1.5}},
      {MapId::saliency, MapId::thal_wm, MapId::wm, 1.0, {0.5, 1.5}},
  };
  s.beta = 0.5;
  s.noise_amplitude = 0.05;
  s.rng_seed = 1;
  s.theta_bump = 0.3;
  s.theta_off = 0.05;
  s.switch_amplitude = 1.0;
  s.switch_ticks = 50;
  return s;
}

/// The six-map model. Stepped by a single writer; every tick reads only the
/// previous state (Jacobi update), so map order never matters.
class Network {
 public:
  explicit Network(NetworkSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    for (auto& m : maps_) m = FieldGrid(spec_.n);
  }

  const NetworkSpec& spec() const noexcept { return spec_; }
  int size() const noexcept { return spec_.n; }
  long ticks() const noexcept { return ticks_; }

  const FieldGrid& activity(MapId id) const noexcept { return maps_[index_of(id)]; }

  void set_activity(MapId id, FieldGrid grid) {
    if (grid.size() != spec_.n) throw ConfigError("dimension mismatch in set_activity");
    maps_[index_of(id)] = std::move(grid);
  }

  /// Holds a map at a fixed activity until unpinned (used for ablations).
  void pin(MapId id, FieldGrid grid) {
    set_activity(id, std::move(grid));
    pinned_[index_of(id)] = true;
  }
  void pin(MapId id) { pin(id, FieldGrid(spec_.n)); }
  void unpin(MapId id) noexcept { pinned_[index_of(id)] = false; }
  bool pinned(MapId id) const noexcept { return pinned_[index_of(id)]; }

  /// Uniform switch plateau held for `duration` ticks, then released to decay.
  void engage_switch(int duration) {
    if (duration <= 0) throw ConfigError("switch duration must be > 0");
    switch_hold_ = duration;
    if (!pinned(MapId::switch_inhibition)) {
      maps_[index_of(MapId::switch_inhibition)] =
          FieldGrid(spec_.n, std::min(spec_.switch_amplitude, kActivityMax));
    }
  }
  int switch_hold_remaining() const noexcept { return switch_hold_; }

  /// Net input each map would receive from the current state, excluding noise.
  std::array<FieldGrid, kMapCount> inputs(const FieldGrid& afferent_saliency) const {
    require_size(afferent_saliency);
    std::array<FieldGrid, kMapCount> in;
    for (auto& g : in) g = FieldGrid(spec_.n);
    in[index_of(MapId::saliency)] = afferent_saliency;

    for (const auto& p : spec_.sigma_projections) {
      const auto& src = activity(p.source);
      if (src.is_zero()) continue;
      detail::accumulate_gaussian(src, p.sign * p.kernel.C, p.kernel.c, in[index_of(p.target)], scratch_);
    }
    for (const auto& p : spec_.gated_projections) {
      const auto& a = activity(p.source_a);
      const auto& b = activity(p.source_b);
      FieldGrid product(spec_.n);
      auto av = a.values();
      auto bv = b.values();
      auto pv = product.values();
      for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = av[i] * bv[i];
      if (product.is_zero()) continue;
      detail::accumulate_gaussian(product, p.weight * p.spread.C, p.spread.c, in[index_of(p.target)], scratch_);
    }
    in[index_of(MapId::anticipation)] += anticipation_input(activity(MapId::wm), activity(MapId::focus),
                                                            spec_.beta, spec_.anticipation_method);
    for (MapId id : kAllMaps) {
      const auto& lateral = spec_.map(id).lateral;
      if (lateral && !activity(id).is_zero()) {
        in[index_of(id)] += lateral_input(activity(id), *lateral, spec_.lateral_method);
      }
    }
    return in;
  }

  /// One synchronous Euler step of every map.
  void tick(const FieldGrid& afferent_saliency, std::mt19937_64& rng) {
    auto in = inputs(afferent_saliency);
    if (spec_.noise_amplitude > 0.0) {
      std::uniform_real_distribution<double> noise(0.0, spec_.noise_amplitude);
      for (double& v : in[index_of(MapId::focus)].values()) v += noise(rng);
    }
    const FieldGrid no_lateral(spec_.n);
    std::array<FieldGrid, kMapCount> next;
    for (MapId id : kAllMaps) {
      const auto k = index_of(id);
      if (pinned_[k]) {
        next[k] = maps_[k];
      } else if (id == MapId::switch_inhibition && switch_hold_ > 0) {
        next[k] = FieldGrid(spec_.n, std::min(spec_.switch_amplitude, kActivityMax));
      } else if (id == MapId::anticipation) {
        next[k] = step_anticipation(maps_[k], in[k], spec_.map(id).step);
      } else {
        next[k] = sigma_step(maps_[k], no_lateral, in[k], spec_.map(id).step);
      }
    }
    if (switch_hold_ > 0) --switch_hold_;
    maps_ = std::move(next);
    ++ticks_;
  }

  double max_change(const Network& other) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < kMapCount; ++k) worst = std::max(worst, max_abs_difference(maps_[k], other.maps_[k]));
    return worst;
  }

  bool all_finite() const noexcept {
    for (const auto& m : maps_) {
      if (!m.all_finite()) return false;
    }
    return true;
  }

  friend bool operator==(const Network& a, const Network& b) {
    return a.maps_ == b.maps_ && a.switch_hold_ == b.switch_hold_ && a.pinned_ == b.pinned_;
  }

 private:
  void require_size(const FieldGrid& g) const {
    if (g.size() != spec_.n) throw ConfigError("afferent grid does not match network size");
  }

  NetworkSpec spec_;
  std::array<FieldGrid, kMapCount> maps_;
  std::array<bool, kMapCount> pinned_{};
  int switch_hold_ = 0;
  long ticks_ = 0;
  mutable std::vector<double> scratch_;
};

inline Network build_network(const NetworkSpec& spec) { return Network(spec); }

/// Predicate checked after every tick: (state before the tick, state after).
using SettleCriterion = std::function<bool(const Network& before, const Network& after)>;

inline SettleCriterion converged(double tolerance = 1e-4) {
  return [tolerance](const Network& before, const Network& after) {
    return after.max_change(before) < tolerance;
  };
}

struct SettleOutcome {
  long ticks_used = 0;
  bool converged = false;  // false: NonConvergence, final state kept in the network
};

inline SettleOutcome settle(Network& net, const FieldGrid& afferent, long max_ticks, const SettleCriterion& criterion,
                            std::mt19937_64& rng) {
  if (max_ticks <= 0) throw ConfigError("max_ticks must be > 0");
  SettleOutcome out;
  for (long t = 0; t < max_ticks; ++t) {
    Network before = net;
    net.tick(afferent, rng);
    ++out.ticks_used;
    if (criterion(before, net)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace avsearch
