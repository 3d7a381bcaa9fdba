#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"

using namespace avsearch;

namespace {

constexpr int kN = 41;

Scene scene_of(std::vector<WorldPoint> stimuli) { return default_sim_config().make_scene(std::move(stimuli)); }

}  // namespace

TEST(WorldToRetina, MapsDegreesToCells) {
  const GazeState g{{0.0, 0.0}, 0.5};
  EXPECT_EQ(world_to_retina({5.0, 0.0}, g, kN), (Cell{30, 20}));
  EXPECT_EQ(world_to_retina({-2.0, 1.5}, g, kN), (Cell{16, 23}));
  EXPECT_FALSE(world_to_retina({30.0, 0.0}, g, kN).has_value());
  EXPECT_FALSE(world_to_retina({0.0, -10.5}, g, kN).has_value());
  EXPECT_EQ(world_to_retina({10.0, 10.0}, g, kN), (Cell{40, 40}));
}

TEST(WorldToRetina, GazeLandsOnCenter) {
  for (WorldPoint gaze : {WorldPoint{0.0, 0.0}, WorldPoint{3.5, -2.0}, WorldPoint{-7.0, 11.5}}) {
    EXPECT_EQ(world_to_retina(gaze, GazeState{gaze, 0.5}, kN), (Cell{20, 20}));
  }
}

TEST(WorldToRetina, InverseOfRetinaToWorld) {
  const GazeState g{{1.5, -3.0}, 0.25};
  for (int y = 0; y < kN; y += 5) {
    for (int x = 0; x < kN; x += 3) {
      EXPECT_EQ(world_to_retina(retina_to_world({x, y}, g, kN), g, kN), (Cell{x, y}));
    }
  }
}

TEST(WorldToRetina, RejectsBadGaze) {
  EXPECT_THROW(world_to_retina({0.0, 0.0}, GazeState{{0.0, 0.0}, 0.0}, kN), ConfigError);
}

TEST(RenderSaliency, PeaksOnStimuli) {
  const GazeState g{{0.0, 0.0}, 0.5};
  const FieldGrid s = render_saliency(scene_of({{5.0, 0.0}}), g, kN);
  EXPECT_EQ(argmax_cell(s), (Cell{30, 20}));
  EXPECT_DOUBLE_EQ(s(30, 20), 1.0);
  EXPECT_EQ(count_bumps(s, 0.3), 1);
  EXPECT_GE(s.min(), 0.0);
  EXPECT_LE(s.max(), kActivityMax);

  const FieldGrid three = render_saliency(scene_of({{-4.0, -2.0}, {3.0, -3.0}, {0.0, 3.0}}), g, kN);
  const auto regions = find_regions(three, 0.3);
  ASSERT_EQ(regions.size(), 3u);
  EXPECT_EQ(regions[0].centroid, (Cell{26, 14}));
  EXPECT_EQ(regions[1].centroid, (Cell{12, 16}));
  EXPECT_EQ(regions[2].centroid, (Cell{20, 26}));
}

TEST(RenderSaliency, EmptySceneIsBlank) {
  EXPECT_TRUE(render_saliency(scene_of({}), GazeState{}, kN).is_zero());
  EXPECT_TRUE(blank_saliency(kN).is_zero());
}

TEST(RenderSaliency, IndependentOfStimulusOrder) {
  std::vector<WorldPoint> stimuli = {{-4.0, -2.0}, {3.0, -3.0}, {0.0, 3.0}, {6.5, 6.0}};
  const GazeState g{{0.5, 1.0}, 0.5};
  const FieldGrid reference = render_saliency(scene_of(stimuli), g, kN);
  std::sort(stimuli.begin(), stimuli.end(), [](auto a, auto b) { return a.x < b.x; });
  std::mt19937_64 rng(41);
  for (int k = 0; k < 6; ++k) {
    std::shuffle(stimuli.begin(), stimuli.end(), rng);
    EXPECT_LT(max_abs_difference(render_saliency(scene_of(stimuli), g, kN), reference), 1e-12);
  }
}

TEST(RenderSaliency, RetinotopicUnderGazeShift) {
  // Moving the gaze by d equals moving every stimulus by -d.
  const std::vector<WorldPoint> stimuli = {{-4.0, -2.0}, {3.0, -3.0}, {0.0, 3.0}};
  for (WorldPoint d : {WorldPoint{1.0, 0.0}, WorldPoint{-3.5, 2.0}, WorldPoint{4.0, -6.0}}) {
    std::vector<WorldPoint> moved;
    for (auto p : stimuli) moved.push_back(p - d);
    const FieldGrid a = render_saliency(scene_of(stimuli), GazeState{d, 0.5}, kN);
    const FieldGrid b = render_saliency(scene_of(moved), GazeState{{0.0, 0.0}, 0.5}, kN);
    EXPECT_LT(max_abs_difference(a, b), 1e-12);
  }
}

TEST(RenderSaliency, OffFieldStimulusLeavesOnlyTails) {
  const FieldGrid s = render_saliency(scene_of({{12.0, 0.0}}), GazeState{{0.0, 0.0}, 0.5}, kN);
  EXPECT_GT(s(40, 20), 0.0);
  EXPECT_LT(s.max(), 0.3);
}

TEST(Scene, RejectsCoincidentOrNonFiniteStimuli) {
  EXPECT_THROW(scene_of({{1.0, 1.0}, {1.0, 1.0}}), ConfigError);
  EXPECT_THROW(scene_of({{std::nan(""), 1.0}}), ConfigError);
  Scene bad{{}, 0.0, 1.0};
  EXPECT_THROW(bad.validate(), ConfigError);
}
