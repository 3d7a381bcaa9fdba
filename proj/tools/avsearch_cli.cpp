// avsearch: run anticipatory visual-search trials from the command line.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avsearch/avsearch.hpp"

namespace {

using namespace avsearch;

std::string summary_line(const ScanMetrics& m) {
  std::ostringstream o;
  o << "outcome=" << to_string(m.outcome) << " fixations=" << m.fixations.size() << " ticks=" << m.total_ticks;
  return o.str();
}

std::string metrics_text(const ScanMetrics& m, std::uint64_t seed) {
  std::ostringstream o;
  o << "seed=" << seed << "\n"
    << "outcome=" << to_string(m.outcome) << "\n"
    << "fixations=" << m.fixations.size() << "\n"
    << "total_ticks=" << m.total_ticks << "\n";
  o << "fixation_sequence=";
  for (std::size_t i = 0; i < m.fixations.size(); ++i) o << (i ? "," : "") << m.fixations[i].stimulus;
  o << "\nfixation_ticks=";
  for (std::size_t i = 0; i < m.fixations.size(); ++i) o << (i ? "," : "") << m.fixations[i].tick;
  o << "\nper_stimulus_counts=";
  for (std::size_t i = 0; i < m.per_stimulus_counts.size(); ++i) o << (i ? "," : "") << m.per_stimulus_counts[i];
  o << "\n";
  if (m.refixated) o << "refixated=" << *m.refixated << "\n";
  if (!m.missed.empty()) {
    o << "missed=";
    for (std::size_t i = 0; i < m.missed.size(); ++i) o << (i ? "," : "") << m.missed[i];
    o << "\n";
  }
  if (!m.reason.empty()) o << "reason=" << m.reason << "\n";
  return o.str();
}

bool is_error_outcome(Outcome o) { return o == Outcome::Failed || o == Outcome::NonConvergence; }

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    seeds.push_back(std::stoull(item));
  }
  return seeds;
}

SimConfig config_or_default(const std::string& path) {
  return path.empty() ? default_sim_config() : load_config(path);
}

int cmd_run(const std::string& scene_path, const std::string& config_path, std::uint64_t seed,
            const std::string& dump_dir, long every, bool pgm, const std::string& metrics_path) {
  const SimConfig cfg = config_or_default(config_path);
  const Scene scene = cfg.make_scene(load_scene(scene_path));
  const ScanMetrics m = dump_dir.empty() ? run_trial(scene, cfg, seed)
                                         : dump_frames(scene, cfg, seed, dump_dir, every, pgm);
  std::cout << summary_line(m) << "\n";
  if (!metrics_path.empty()) write_file(metrics_path, metrics_text(m, seed));
  if (is_error_outcome(m.outcome)) {
    std::cerr << "error: " << to_string(m.outcome) << ": " << m.reason << "\n";
    return 2;
  }
  return 0;
}

int cmd_batch(const std::string& scene_path, const std::string& config_path, std::size_t count,
              const std::string& seed_list, unsigned jobs, bool per_trial) {
  const SimConfig cfg = config_or_default(config_path);
  const Scene scene = cfg.make_scene(load_scene(scene_path));
  std::vector<std::uint64_t> seeds = seed_list.empty() ? std::vector<std::uint64_t>{} : parse_seed_list(seed_list);
  if (seed_list.empty()) {
    for (std::size_t i = 0; i < count; ++i) seeds.push_back(i + 1);
  }
  const BatchSummary s = run_batch(scene, cfg, seeds, jobs);
  if (per_trial) {
    for (std::size_t i = 0; i < s.runs.size(); ++i) {
      std::cout << "seed=" << seeds[i] << " " << summary_line(s.runs[i]) << "\n";
    }
  }
  std::printf("trials=%zu successes=%zu success_rate=%.3f mean_fixations=%.3f mean_ticks=%.1f\n", s.trials,
              s.successes, s.success_rate, s.mean_fixations, s.mean_ticks);
  return 0;
}

int cmd_verify(const std::string& config_path, int trials, std::uint64_t seed) {
  const SimConfig cfg = config_or_default(config_path);
  const int n = cfg.network.n;
  const DoGKernel dog = *cfg.network.map(MapId::focus).lateral;
  const double beta = cfg.network.beta > 0.0 ? cfg.network.beta : 1.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_grid = [&] {
    FieldGrid g(n);
    for (double& v : g.values()) v = unit(rng);
    return g;
  };
  double lateral_fast = 0.0, lateral_naive = 0.0, antic_fast = 0.0, antic_naive = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FieldGrid u = random_grid();
    const FieldGrid ref = oracle::brute_force_lateral(u, dog);
    lateral_fast = std::max(lateral_fast, max_abs_difference(lateral_input(u, dog, LateralMethod::Separable), ref));
    lateral_naive = std::max(lateral_naive, max_abs_difference(lateral_input(u, dog, LateralMethod::Naive), ref));
    const FieldGrid wm = random_grid();
    const FieldGrid focus = random_grid();
    const FieldGrid aref = oracle::brute_force_anticipation(wm, focus, beta);
    antic_fast = std::max(antic_fast, max_abs_difference(anticipation_input(wm, focus, beta, CorrelationMethod::Fft), aref));
    antic_naive =
        std::max(antic_naive, max_abs_difference(anticipation_input(wm, focus, beta, CorrelationMethod::Naive), aref));
  }
  std::printf("n=%d trials=%d\n", n, trials);
  std::printf("lateral_separable_max_abs_error=%.3e\n", lateral_fast);
  std::printf("lateral_naive_max_abs_error=%.3e\n", lateral_naive);
  std::printf("anticipation_fft_max_abs_error=%.3e\n", antic_fast);
  std::printf("anticipation_naive_max_abs_error=%.3e\n", antic_naive);
  const bool ok = lateral_fast < 1e-9 && antic_fast < 1e-9 && lateral_naive == 0.0 && antic_naive == 0.0;
  if (!ok) {
    std::cerr << "error: optimized kernels disagree with the reference sums\n";
    return 3;
  }
  return 0;
}

int cmd_render(const std::string& scene_path, const std::string& config_path, double gx, double gy,
               const std::string& out, const std::string& pgm) {
  const SimConfig cfg = config_or_default(config_path);
  const Scene scene = cfg.make_scene(load_scene(scene_path));
  const FieldGrid g = render_saliency(scene, GazeState{{gx, gy}, cfg.perception.cell_size_deg}, cfg.network.n);
  if (out.empty()) {
    std::cout << grid_to_csv(g);
  } else {
    write_file(out, grid_to_csv(g));
  }
  if (!pgm.empty()) write_file(pgm, grid_to_pgm(g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anticipatory visual search on coupled neural fields"};
  app.require_subcommand(1);

  std::string scene, config, dump_dir, metrics, seed_list, out, pgm_out;
  std::uint64_t seed = 1;
  long every = 50;
  bool pgm = false, per_trial = false;
  std::size_t seeds = 20;
  unsigned jobs = 1;
  int verify_trials = 200;
  double gaze_x = 0.0, gaze_y = 0.0;

  auto* run = app.add_subcommand("run", "Run one scan trial");
  run->add_option("--scene", scene, "Scene file")->required();
  run->add_option("--config", config, "Config file (defaults if omitted)");
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--dump-frames", dump_dir, "Directory for per-map frame dumps");
  run->add_option("--every", every, "Dump every K ticks")->check(CLI::PositiveNumber);
  run->add_flag("--pgm", pgm, "Also write PGM images");
  run->add_option("--metrics", metrics, "Write key=value metrics to this file");

  auto* batch = app.add_subcommand("batch", "Run trials over many seeds");
  batch->add_option("--scene", scene, "Scene file")->required();
  batch->add_option("--config", config, "Config file (defaults if omitted)");
  auto* seeds_opt = batch->add_option("--seeds", seeds, "Use seeds 1..N");
  batch->add_option("--seed-list", seed_list, "Comma separated seeds")->excludes(seeds_opt);
  batch->add_option("--jobs", jobs, "Parallel trials")->check(CLI::PositiveNumber);
  batch->add_flag("--per-trial", per_trial, "Print one line per trial");

  auto* verify = app.add_subcommand("verify", "Check optimized kernels against brute-force sums");
  verify->add_option("--config", config, "Config file (defaults if omitted)");
  verify->add_option("--trials", verify_trials, "Random grids per kernel")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Random seed");

  auto* render = app.add_subcommand("render", "Print the saliency map of a scene");
  render->add_option("--scene", scene, "Scene file")->required();
  render->add_option("--config", config, "Config file (defaults if omitted)");
  render->add_option("--gaze-x", gaze_x, "Gaze x in degrees");
  render->add_option("--gaze-y", gaze_y, "Gaze y in degrees");
  render->add_option("--out", out, "CSV output path (stdout if omitted)");
  render->add_option("--pgm", pgm_out, "PGM output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(scene, config, seed, dump_dir, every, pgm, metrics);
    if (*batch) return cmd_batch(scene, config, seeds, seed_list, jobs, per_trial);
    if (*verify) return cmd_verify(config, verify_trials, seed);
    if (*render) return cmd_render(scene, config, gaze_x, gaze_y, out, pgm_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
