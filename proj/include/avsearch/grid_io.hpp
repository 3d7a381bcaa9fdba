#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "avsearch/field_grid.hpp"
#include "avsearch/network.hpp"
#include "avsearch/scan_runner.hpp"

namespace avsearch {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major CSV, one grid row per line, 9 significant digits.
inline std::string grid_to_csv(const FieldGrid& grid) {
  std::string out;
  char buf[32];
  for (int y = 0; y < grid.size(); ++y) {
    for (int x = 0; x < grid.size(); ++x) {
      std::snprintf(buf, sizeof buf, "%.9g", grid(x, y));
      if (x > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

inline FieldGrid grid_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  FieldGrid g(n);
  for (int y = 0; y < n; ++y) {
    if (static_cast<int>(rows[y].size()) != n) throw IoError("csv grid is not square");
    for (int x = 0; x < n; ++x) g(x, y) = rows[y][x];
  }
  return g;
}

/// Binary 8-bit PGM, linear [0, u_max] → [0, 255].
inline std::string grid_to_pgm(const FieldGrid& grid) {
  const int n = grid.size();
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double v = std::clamp(grid(x, y) / kActivityMax, 0.0, 1.0);
      out += static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0)));
    }
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw IoError("write failed: " + path.string());
}

/// Observer that dumps every map every `every_k` ticks (tick 0 included) and
/// keeps a manifest: "tick phase gaze_x gaze_y file..." per sample.
class FrameDumper {
 public:
  FrameDumper(std::filesystem::path dir, long every_k, bool pgm = false)
      : dir_(std::move(dir)), every_k_(every_k), pgm_(pgm) {
    if (every_k_ <= 0) throw ConfigError("every_k must be > 0");
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) throw IoError("cannot create directory " + dir_.string());
  }

  void operator()(const TrialFrame& frame) {
    if (frame.phase_end || frame.tick % every_k_ != 0 || frame.tick == last_tick_) return;
    last_tick_ = frame.tick;
    char head[128];
    std::snprintf(head, sizeof head, "%ld %s %.6f %.6f", frame.tick, std::string(to_string(frame.phase)).c_str(),
                  frame.gaze.x, frame.gaze.y);
    std::string line = head;
    for (MapId id : kAllMaps) {
      char name[96];
      std::snprintf(name, sizeof name, "t%06ld_%s", frame.tick, std::string(to_string(id)).c_str());
      const std::string csv = std::string(name) + ".csv";
      write_file(dir_ / csv, grid_to_csv(frame.net.activity(id)));
      line += ' ' + csv;
      if (pgm_) {
        const std::string img = std::string(name) + ".pgm";
        write_file(dir_ / img, grid_to_pgm(frame.net.activity(id)));
        line += ' ' + img;
      }
    }
    manifest_ += line + '\n';
    ++samples_;
    write_file(dir_ / "manifest.txt", manifest_);
  }

  long samples() const noexcept { return samples_; }

 private:
  std::filesystem::path dir_;
  long every_k_;
  bool pgm_;
  long last_tick_ = -1;
  long samples_ = 0;
  std::string manifest_;
};

/// Runs one trial while dumping frames into `dir`.
inline ScanMetrics dump_frames(const Scene& scene, const SimConfig& cfg, std::uint64_t seed,
                               const std::filesystem::path& dir, long every_k, bool pgm = false) {
  FrameDumper dumper(dir, every_k, pgm);
  TrialObserver obs = [&dumper](const TrialFrame& f) { dumper(f); };
  return run_trial(scene, cfg, seed, obs);
}

}  // namespace avsearch
