#pragma once

// Flat INI-style text for SimConfig and scene files.
//
//   [network] [perception] [trial]   scalar keys named after the struct fields
//   [map.<id>]                       step.tau step.dt step.baseline lateral.{A,B,a,b}
//   [projection.<label>]             kind = sigma | gated, then the projection fields
//
// Unknown sections or keys are errors. A [map.*] section replaces that map's
// parameters; if any [projection.*] section appears the projection list is
// replaced by the file's, in file order.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "avsearch/errors.hpp"
#include "avsearch/perception.hpp"
#include "avsearch/sim_config.hpp"

namespace avsearch {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
  const auto p = s.find('#');
  return p == std::string_view::npos ? s : s.substr(0, p);
}

inline double parse_double(std::string_view v, int line, std::string_view key) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw ParseError(line, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view v, int line, std::string_view key) {
  Int out{};
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  }
  return out;
}

inline bool parse_bool(std::string_view v, int line, std::string_view key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError(line, "'" + std::string(key) + "' expects true or false");
}

inline MapId parse_map(std::string_view v, int line) {
  const auto id = parse_map_id(v);
  if (!id) throw ParseError(line, "unknown map '" + std::string(v) + "'");
  return *id;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, Entry>> entries;
};

inline std::vector<Section> read_sections(std::istream& in) {
  std::vector<Section> sections;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "unterminated section header");
      const auto name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) throw ParseError(line, "empty section name");
      for (const auto& prev : sections) {
        if (prev.name == name) throw ParseError(line, "duplicate section [" + std::string(name) + "]");
      }
      sections.push_back({std::string(name), line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
    if (sections.empty()) throw ParseError(line, "key outside of any section");
    const auto key = trim(s.substr(0, eq));
    const auto value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "missing key");
    if (value.empty()) throw ParseError(line, "missing value for '" + std::string(key) + "'");
    auto& entries = sections.back().entries;
    for (const auto& [k, e] : entries) {
      if (k == key) throw ParseError(line, "duplicate key '" + std::string(key) + "'");
    }
    entries.push_back({std::string(key), {std::string(value), line}});
  }
  return sections;
}

/// Dispatches each key of a section to a setter; unknown keys are errors.
using Setter = std::function<void(const std::string&, int)>;

inline void apply(const Section& sec, const std::map<std::string, Setter, std::less<>>& setters) {
  for (const auto& [key, e] : sec.entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ParseError(e.line, "unknown key '" + key + "' in [" + sec.name + "]");
    }
    it->second(e.value, e.line);
  }
}

inline const Entry* find_entry(const Section& sec, std::string_view key) {
  for (const auto& [k, e] : sec.entries) {
    if (k == key) return &e;
  }
  return nullptr;
}

inline const Entry& require_entry(const Section& sec, std::string_view key) {
  const Entry* e = find_entry(sec, key);
  if (!e) throw ParseError(sec.line, "[" + sec.name + "] is missing '" + std::string(key) + "'");
  return *e;
}

}  // namespace detail

/// Parses config text on top of the defaults. Semantic errors found after
/// parsing (for example an even n) are reported as ConfigError.
inline SimConfig parse_config(std::istream& in) {
  using namespace detail;
  SimConfig cfg = default_sim_config();
  auto& net = cfg.network;
  bool projections_seen = false;

  for (const auto& sec : read_sections(in)) {
    const std::string& name = sec.name;
    if (name == "network") {
      apply(sec, {
          {"n", [&](const std::string& v, int l) { net.n = parse_int<int>(v, l, "n"); }},
          {"beta", [&](const std::string& v, int l) { net.beta = parse_double(v, l, "beta"); }},
          {"noise_amplitude", [&](const std::string& v, int l) { net.noise_amplitude = parse_double(v, l, "noise_amplitude"); }},
          {"rng_seed", [&](const std::string& v, int l) { net.rng_seed = parse_int<std::uint64_t>(v, l, "rng_seed"); }},
          {"theta_bump", [&](const std::string& v, int l) { net.theta_bump = parse_double(v, l, "theta_bump"); }},
          {"theta_off", [&](const std::string& v, int l) { net.theta_off = parse_double(v, l, "theta_off"); }},
          {"switch_amplitude", [&](const std::string& v, int l) { net.switch_amplitude = parse_double(v, l, "switch_amplitude"); }},
          {"switch_ticks", [&](const std::string& v, int l) { net.switch_ticks = parse_int<int>(v, l, "switch_ticks"); }},
          {"lateral_method", [&](const std::string& v, int l) {
             if (v == "naive") net.lateral_method = LateralMethod::Naive;
             else if (v == "separable") net.lateral_method = LateralMethod::Separable;
             else throw ParseError(l, "lateral_method must be naive or separable");
           }},
          {"anticipation_method", [&](const std::string& v, int l) {
             if (v == "naive") net.anticipation_method = CorrelationMethod::Naive;
             else if (v == "fft") net.anticipation_method = CorrelationMethod::Fft;
             else throw ParseError(l, "anticipation_method must be naive or fft");
           }},
      });
    } else if (name == "perception") {
      auto& p = cfg.perception;
      apply(sec, {
          {"cell_size_deg", [&](const std::string& v, int l) { p.cell_size_deg = parse_double(v, l, "cell_size_deg"); }},
          {"stimulus_amplitude", [&](const std::string& v, int l) { p.stimulus_amplitude = parse_double(v, l, "stimulus_amplitude"); }},
          {"stimulus_width_deg", [&](const std::string& v, int l) { p.stimulus_width_deg = parse_double(v, l, "stimulus_width_deg"); }},
      });
    } else if (name == "trial") {
      auto& t = cfg.trial;
      auto num = [](double& field, const char* key) {
        return Setter([&field, key](const std::string& v, int l) { field = parse_double(v, l, key); });
      };
      auto count = [](long& field, const char* key) {
        return Setter([&field, key](const std::string& v, int l) { field = parse_int<long>(v, l, key); });
      };
      apply(sec, {
          {"initial_gaze_x", num(t.initial_gaze_x, "initial_gaze_x")},
          {"initial_gaze_y", num(t.initial_gaze_y, "initial_gaze_y")},
          {"settle_max_ticks", count(t.settle_max_ticks, "settle_max_ticks")},
          {"focus_commit", num(t.focus_commit, "focus_commit")},
          {"presaccade_min_ticks", count(t.presaccade_min_ticks, "presaccade_min_ticks")},
          {"presaccade_max_ticks", count(t.presaccade_max_ticks, "presaccade_max_ticks")},
          {"prediction_ready", num(t.prediction_ready, "prediction_ready")},
          {"blank_ticks", count(t.blank_ticks, "blank_ticks")},
          {"postsaccade_ticks", count(t.postsaccade_ticks, "postsaccade_ticks")},
          {"suppress_during_saccade",
           [&](const std::string& v, int l) { t.suppress_during_saccade = parse_bool(v, l, "suppress_during_saccade"); }},
          {"max_total_ticks", count(t.max_total_ticks, "max_total_ticks")},
          {"fixation_tolerance_cells", num(t.fixation_tolerance_cells, "fixation_tolerance_cells")},
          {"motor_noise_deg", num(t.motor_noise_deg, "motor_noise_deg")},
      });
    } else if (name.starts_with("map.")) {
      const MapId id = parse_map(std::string_view(name).substr(4), sec.line);
      MapParams mp;
      DoGKernel dog;
      int lateral_keys = 0;
      auto lat = [&](double& field, const char* key) {
        return Setter([&field, key, &lateral_keys](const std::string& v, int l) {
          field = parse_double(v, l, key);
          ++lateral_keys;
        });
      };
      apply(sec, {
          {"step.tau", [&](const std::string& v, int l) { mp.step.tau = parse_double(v, l, "step.tau"); }},
          {"step.dt", [&](const std::string& v, int l) { mp.step.dt = parse_double(v, l, "step.dt"); }},
          {"step.baseline", [&](const std::string& v, int l) { mp.step.baseline = parse_double(v, l, "step.baseline"); }},
          {"lateral.A", lat(dog.A, "lateral.A")},
          {"lateral.B", lat(dog.B, "lateral.B")},
          {"lateral.a", lat(dog.a, "lateral.a")},
          {"lateral.b", lat(dog.b, "lateral.b")},
      });
      if (lateral_keys != 0 && lateral_keys != 4) {
        throw ParseError(sec.line, "[" + name + "] needs all of lateral.A, lateral.B, lateral.a, lateral.b");
      }
      if (lateral_keys == 4) mp.lateral = dog;
      net.map(id) = mp;
    } else if (name.starts_with("projection.")) {
      if (!projections_seen) {
        net.sigma_projections.clear();
        net.gated_projections.clear();
        projections_seen = true;
      }
      const auto& kind = require_entry(sec, "kind");
      if (kind.value == "sigma") {
        SigmaProjection p;
        apply(sec, {
            {"kind", [](const std::string&, int) {}},
            {"source", [&](const std::string& v, int l) { p.source = parse_map(v, l); }},
            {"target", [&](const std::string& v, int l) { p.target = parse_map(v, l); }},
            {"sign", [&](const std::string& v, int l) { p.sign = parse_int<int>(v, l, "sign"); }},
            {"kernel.C", [&](const std::string& v, int l) { p.kernel.C = parse_double(v, l, "kernel.C"); }},
            {"kernel.c", [&](const std::string& v, int l) { p.kernel.c = parse_double(v, l, "kernel.c"); }},
        });
        for (const char* k : {"source", "target", "kernel.C", "kernel.c"}) require_entry(sec, k);
        net.sigma_projections.push_back(p);
      } else if (kind.value == "gated") {
        GatedProjection p;
        apply(sec, {
            {"kind", [](const std::string&, int) {}},
            {"source_a", [&](const std::string& v, int l) { p.source_a = parse_map(v, l); }},
            {"source_b", [&](const std::string& v, int l) { p.source_b = parse_map(v, l); }},
            {"target", [&](const std::string& v, int l) { p.target = parse_map(v, l); }},
            {"weight", [&](const std::string& v, int l) { p.weight = parse_double(v, l, "weight"); }},
            {"spread.C", [&](const std::string& v, int l) { p.spread.C = parse_double(v, l, "spread.C"); }},
            {"spread.c", [&](const std::string& v, int l) { p.spread.c = parse_double(v, l, "spread.c"); }},
        });
        for (const char* k : {"source_a", "source_b", "target", "weight", "spread.C", "spread.c"}) require_entry(sec, k);
        net.gated_projections.push_back(p);
      } else {
        throw ParseError(kind.line, "projection kind must be sigma or gated");
      }
    } else {
      throw ParseError(sec.line, "unknown section [" + name + "]");
    }
  }
  cfg.validate();
  return cfg;
}

inline SimConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in);
}

inline std::string write_config(const SimConfig& cfg) {
  using detail::format_double;
  const auto& net = cfg.network;
  std::ostringstream o;
  o << "[network]\n"
    << "n = " << net.n << "\n"
    << "beta = " << format_double(net.beta) << "\n"
    << "noise_amplitude = " << format_double(net.noise_amplitude) << "\n"
    << "rng_seed = " << net.rng_seed << "\n"
    << "theta_bump = " << format_double(net.theta_bump) << "\n"
    << "theta_off = " << format_double(net.theta_off) << "\n"
    << "switch_amplitude = " << format_double(net.switch_amplitude) << "\n"
    << "switch_ticks = " << net.switch_ticks << "\n"
    << "lateral_method = " << (net.lateral_method == LateralMethod::Naive ? "naive" : "separable") << "\n"
    << "anticipation_method = " << (net.anticipation_method == CorrelationMethod::Naive ? "naive" : "fft") << "\n";

  for (MapId id : kAllMaps) {
    const auto& m = net.map(id);
    o << "\n[map." << to_string(id) << "]\n"
      << "step.tau = " << format_double(m.step.tau) << "\n"
      << "step.dt = " << format_double(m.step.dt) << "\n"
      << "step.baseline = " << format_double(m.step.baseline) << "\n";
    if (m.lateral) {
      o << "lateral.A = " << format_double(m.lateral->A) << "\n"
        << "lateral.B = " << format_double(m.lateral->B) << "\n"
        << "lateral.a = " << format_double(m.lateral->a) << "\n"
        << "lateral.b = " << format_double(m.lateral->b) << "\n";
    }
  }

  std::map<std::string, int> used;
  auto label = [&used](std::string base) {
    const int k = ++used[base];
    return k == 1 ? base : base + "_" + std::to_string(k);
  };
  for (const auto& p : net.sigma_projections) {
    o << "\n[projection." << label(std::string(to_string(p.source)) + "_to_" + std::string(to_string(p.target)))
      << "]\n"
      << "kind = sigma\n"
      << "source = " << to_string(p.source) << "\n"
      << "target = " << to_string(p.target) << "\n"
      << "sign = " << p.sign << "\n"
      << "kernel.C = " << format_double(p.kernel.C) << "\n"
      << "kernel.c = " << format_double(p.kernel.c) << "\n";
  }
  for (const auto& p : net.gated_projections) {
    o << "\n[projection."
      << label(std::string(to_string(p.source_a)) + "_and_" + std::string(to_string(p.source_b)) + "_to_" +
               std::string(to_string(p.target)))
      << "]\n"
      << "kind = gated\n"
      << "source_a = " << to_string(p.source_a) << "\n"
      << "source_b = " << to_string(p.source_b) << "\n"
      << "target = " << to_string(p.target) << "\n"
      << "weight = " << format_double(p.weight) << "\n"
      << "spread.C = " << format_double(p.spread.C) << "\n"
      << "spread.c = " << format_double(p.spread.c) << "\n";
  }

  const auto& p = cfg.perception;
  o << "\n[perception]\n"
    << "cell_size_deg = " << format_double(p.cell_size_deg) << "\n"
    << "stimulus_amplitude = " << format_double(p.stimulus_amplitude) << "\n"
    << "stimulus_width_deg = " << format_double(p.stimulus_width_deg) << "\n";

  const auto& t = cfg.trial;
  o << "\n[trial]\n"
    << "initial_gaze_x = " << format_double(t.initial_gaze_x) << "\n"
    << "initial_gaze_y = " << format_double(t.initial_gaze_y) << "\n"
    << "settle_max_ticks = " << t.settle_max_ticks << "\n"
    << "focus_commit = " << format_double(t.focus_commit) << "\n"
    << "presaccade_min_ticks = " << t.presaccade_min_ticks << "\n"
    << "presaccade_max_ticks = " << t.presaccade_max_ticks << "\n"
    << "prediction_ready = " << format_double(t.prediction_ready) << "\n"
    << "blank_ticks = " << t.blank_ticks << "\n"
    << "postsaccade_ticks = " << t.postsaccade_ticks << "\n"
    << "suppress_during_saccade = " << (t.suppress_during_saccade ? "true" : "false") << "\n"
    << "max_total_ticks = " << t.max_total_ticks << "\n"
    << "fixation_tolerance_cells = " << format_double(t.fixation_tolerance_cells) << "\n"
    << "motor_noise_deg = " << format_double(t.motor_noise_deg) << "\n";
  return o.str();
}

/// Scene text: one "x_deg y_deg" stimulus per line, '#' starts a comment.
inline std::vector<WorldPoint> parse_scene(std::istream& in) {
  using namespace detail;
  std::vector<WorldPoint> stimuli;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(strip_comment(raw));
    if (s.empty()) continue;
    std::istringstream ls{std::string(s)};
    std::string xs, ys, extra;
    if (!(ls >> xs >> ys) || (ls >> extra)) throw ParseError(line, "expected 'x_deg y_deg'");
    const WorldPoint p{parse_double(xs, line, "x_deg"), parse_double(ys, line, "y_deg")};
    for (const auto& q : stimuli) {
      if (q == p) throw ParseError(line, "duplicate stimulus position");
    }
    stimuli.push_back(p);
  }
  return stimuli;
}

inline std::vector<WorldPoint> parse_scene(const std::string& text) {
  std::istringstream in(text);
  return parse_scene(in);
}

inline std::vector<WorldPoint> load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scene " + path);
  return parse_scene(in);
}

}  // namespace avsearch
