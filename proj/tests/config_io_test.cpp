#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace avsearch;
using avsearch::testing::source_dir;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

int scene_error_line(const std::string& text) {
  try {
    parse_scene(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(ConfigIo, EmptyTextGivesDefaults) { EXPECT_EQ(parse_config(std::string{}), default_sim_config()); }

TEST(ConfigIo, RoundTrip) {
  SimConfig cfg = default_sim_config();
  EXPECT_EQ(parse_config(write_config(cfg)), cfg);

  cfg.network.beta = 0.125;
  cfg.network.noise_amplitude = 0.0;
  cfg.network.lateral_method = LateralMethod::Naive;
  cfg.network.map(MapId::wm).lateral = DoGKernel{0.5, 0.1, 1.0, 3.0};
  cfg.network.sigma_projections.pop_back();
  cfg.perception.cell_size_deg = 0.25;
  cfg.trial.blank_ticks = 45;
  cfg.trial.suppress_during_saccade = false;
  cfg.trial.motor_noise_deg = 0.1 + 0.2;  // not exactly representable in short decimal form
  EXPECT_EQ(parse_config(write_config(cfg)), cfg);
}

TEST(ConfigIo, ShippedDefaultMatchesBuiltIn) {
  EXPECT_EQ(load_config((source_dir() / "config" / "default.cfg").string()), default_sim_config());
}

TEST(ConfigIo, PartialOverride) {
  const SimConfig cfg = parse_config("[network]\nbeta = 0   # ablation\n\n[trial]\nblank_ticks = 10\n");
  EXPECT_EQ(cfg.network.beta, 0.0);
  EXPECT_EQ(cfg.trial.blank_ticks, 10);
  EXPECT_EQ(cfg.network.sigma_projections, default_network_spec().sigma_projections);
}

TEST(ConfigIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("[network]\nn = 41\nbogus = 3\n"), 3);
  EXPECT_EQ(parse_error_line("\n\n[nowhere]\n"), 3);
  EXPECT_EQ(parse_error_line("[network]\nbeta = fast\n"), 2);
  EXPECT_EQ(parse_error_line("[network]\nbeta\n"), 2);
  EXPECT_EQ(parse_error_line("beta = 1\n"), 1);
  EXPECT_EQ(parse_error_line("[network]\nbeta = 1\nbeta = 2\n"), 3);
  EXPECT_EQ(parse_error_line("[map.cortex]\n"), 1);
  EXPECT_EQ(parse_error_line("[map.focus]\nlateral.A = 1\n"), 1);
  EXPECT_EQ(parse_error_line("[projection.p]\nkind = sigma\nsource = wm\n"), 1);
  EXPECT_EQ(parse_error_line("[projection.p]\nkind = cubic\n"), 2);
  EXPECT_EQ(parse_error_line("[trial]\nsuppress_during_saccade = maybe\n"), 2);
  EXPECT_EQ(parse_error_line("[network]\nswitch_ticks = 1.5\n"), 2);
}

TEST(ConfigIo, MessageNamesTheLine) {
  try {
    parse_config("[network]\nn = 41\nbogus = 3\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 3: ", 0), 0u);
  }
}

TEST(ConfigIo, SemanticErrorsAreConfigErrors) {
  EXPECT_THROW(parse_config("[network]\nn = 40\n"), ConfigError);
  EXPECT_THROW(parse_config("[map.focus]\nstep.tau = 10\n"), ConfigError);  // drops the focus kernel
  EXPECT_THROW(parse_config("[trial]\nfocus_commit = 2\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/avsearch.cfg"), ConfigError);
}

TEST(SceneIo, ParsesStimuliAndComments) {
  const auto s = parse_scene("# three stimuli\n-4 -2\n  3.5 -3   # right\n\n0 3\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], (WorldPoint{-4.0, -2.0}));
  EXPECT_EQ(s[1], (WorldPoint{3.5, -3.0}));
  EXPECT_EQ(s[2], (WorldPoint{0.0, 3.0}));
  EXPECT_TRUE(parse_scene("# nothing\n").empty());
}

TEST(SceneIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(scene_error_line("1 2\n3\n"), 2);
  EXPECT_EQ(scene_error_line("1 2\n\n3 4 5\n"), 3);
  EXPECT_EQ(scene_error_line("# c\nx 2\n"), 2);
  EXPECT_EQ(scene_error_line("1 2\n1 2\n"), 2);
  EXPECT_EQ(scene_error_line("1 2\n3 inf\n"), 2);
}

TEST(SceneIo, ShippedScenes) {
  const auto dir = source_dir() / "scenes";
  EXPECT_EQ(load_scene((dir / "three.scene").string()).size(), 3u);
  EXPECT_EQ(load_scene((dir / "one.scene").string()).size(), 1u);
  EXPECT_TRUE(load_scene((dir / "empty.scene").string()).empty());
  EXPECT_THROW(load_scene((dir / "missing.scene").string()), ConfigError);
}
