#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace avsearch;
using avsearch::testing::gaussian_bump;

namespace {

constexpr int kN = 41;
constexpr int kC = 20;

FieldGrid view(std::vector<WorldPoint> stimuli) {
  const SimConfig cfg = default_sim_config();
  return render_saliency(cfg.make_scene(std::move(stimuli)), GazeState{{0.0, 0.0}, 0.5}, kN);
}

/// Ticks until `done` holds or `limit` ticks pass; returns the ticks used.
template <class Pred>
int run_until(Network& net, const FieldGrid& afferent, std::mt19937_64& rng, int limit, Pred done) {
  int t = 0;
  while (t < limit && !done(net)) {
    net.tick(afferent, rng);
    ++t;
  }
  return t;
}

}  // namespace

TEST(Bumps, FindsSeparateRegions) {
  FieldGrid g(kN);
  for (int y = 5; y < 8; ++y) {
    for (int x = 5; x < 9; ++x) g(x, y) = 0.6;  // 3x4 block
  }
  for (auto [x, y] : {std::pair{30, 30}, {29, 30}, {31, 30}, {30, 29}, {30, 31}}) g(x, y) = 0.9;  // plus sign
  g(20, 20) = 0.2;  // subthreshold
  const auto regions = find_regions(g, 0.3);
  ASSERT_EQ(regions.size(), 2u);
  EXPECT_EQ(regions[0].area, 12);
  EXPECT_EQ(regions[1].area, 5);
  EXPECT_EQ(regions[1].centroid, (Cell{30, 30}));
  EXPECT_DOUBLE_EQ(regions[1].peak, 0.9);
  EXPECT_EQ(count_bumps(g, 0.3), 2);
  EXPECT_EQ(count_bumps(g, 0.1), 3);

  const auto largest = detect_bump(g, 0.3);
  ASSERT_TRUE(largest.has_value());
  EXPECT_EQ(largest->area, 12);
}

TEST(Bumps, DiagonalNeighborsAreSeparate) {
  FieldGrid g(9);
  g(2, 2) = 1.0;
  g(3, 3) = 1.0;
  EXPECT_EQ(count_bumps(g, 0.5), 2);
}

TEST(Bumps, DetectsGaussianPeak) {
  const FieldGrid g = gaussian_bump(kN, 30, 20, 0.8, 2.0);
  const auto bump = detect_bump(g, 0.3);
  ASSERT_TRUE(bump.has_value());
  EXPECT_EQ(bump->cell, (Cell{30, 20}));
  EXPECT_DOUBLE_EQ(bump->peak, 0.8);
  EXPECT_FALSE(detect_bump(FieldGrid(kN), 0.3).has_value());
  EXPECT_THROW(detect_bump(g, 0.0), ConfigError);
}

TEST(DecodeSaccade, DisplacementFromCenter) {
  const GazeState g{{0.0, 0.0}, 0.5};
  const auto plan = decode_saccade(gaussian_bump(kN, kC + 6, kC - 4, 1.0, 1.5), g, 0.3);
  ASSERT_TRUE(plan.has_value());
  EXPECT_DOUBLE_EQ(plan->displacement.x, 3.0);
  EXPECT_DOUBLE_EQ(plan->displacement.y, -2.0);
  EXPECT_EQ(plan->target_cell, (Cell{kC + 6, kC - 4}));

  const auto stay = decode_saccade(gaussian_bump(kN, kC, kC, 1.0, 1.5), g, 0.3);
  ASSERT_TRUE(stay.has_value());
  EXPECT_EQ(stay->displacement, (WorldPoint{0.0, 0.0}));
  EXPECT_FALSE(decode_saccade(FieldGrid(kN), g, 0.3).has_value());
}

TEST(DecodeSaccade, LandingPutsTargetOnFovea) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> cell(4, kN - 5);
  std::uniform_real_distribution<double> start(-5.0, 5.0);
  for (int k = 0; k < 50; ++k) {
    const GazeState g{{start(rng), start(rng)}, 0.5};
    const Cell target{cell(rng), cell(rng)};
    const WorldPoint world = retina_to_world(target, g, kN);
    const auto plan = decode_saccade(gaussian_bump(kN, target.x, target.y, 1.0, 1.5), g, 0.3);
    ASSERT_TRUE(plan.has_value());
    const GazeState landed{g.gaze + plan->displacement, g.cell_size_deg};
    EXPECT_EQ(world_to_retina(world, landed, kN), (Cell{kC, kC}));
  }
}

TEST(Switch, ReleasesTheFocusedTarget) {
  Network net(default_network_spec());
  std::mt19937_64 rng(52);
  const FieldGrid afferent = view({{2.0, -3.0}});
  const double theta = net.spec().theta_bump;
  run_until(net, afferent, rng, 500, [&](const Network& n) { return n.activity(MapId::focus).max() >= 0.9; });
  ASSERT_GE(net.activity(MapId::focus).max(), 0.9);
  trigger_switch(net, net.spec().switch_ticks);
  const int used = run_until(net, afferent, rng, net.spec().switch_ticks + 100,
                             [&](const Network& n) { return n.activity(MapId::focus).max() < n.spec().theta_off; });
  EXPECT_LT(net.activity(MapId::focus).max(), net.spec().theta_off);
  EXPECT_LE(used, net.spec().switch_ticks + 100);
  EXPECT_FALSE(detect_bump(net.activity(MapId::focus), theta).has_value());
}

TEST(Memory, ConjunctionNeedsSaliencyAndFocusAtTheSamePlace) {
  NetworkSpec spec = default_network_spec();
  spec.noise_amplitude = 0.0;
  Network net(spec);
  const FieldGrid afferent = view({{3.0, 3.0}});
  // Focus at a different place from the only stimulus: no memory drive.
  net.set_activity(MapId::saliency, afferent);
  net.set_activity(MapId::focus, gaussian_bump(kN, kC - 6, kC - 6, 1.0, 1.5));
  EXPECT_LT(net.inputs(afferent)[index_of(MapId::wm)].max(), 1e-6);
  // Focus on the stimulus: strong drive there.
  net.set_activity(MapId::focus, gaussian_bump(kN, kC + 6, kC + 6, 1.0, 1.5));
  const FieldGrid wm_in = net.inputs(afferent)[index_of(MapId::wm)];
  EXPECT_EQ(argmax_cell(wm_in), (Cell{kC + 6, kC + 6}));
  EXPECT_GT(wm_in.max(), -spec.map(MapId::wm).step.baseline);
  // No saliency: no drive even with focus in place.
  net.set_activity(MapId::saliency, FieldGrid(kN));
  EXPECT_LT(net.inputs(afferent)[index_of(MapId::wm)].max(), 1e-12);
}

TEST(Memory, LoopDiesWithoutSaliency) {
  Network net(default_network_spec());
  std::mt19937_64 rng(53);
  net.set_activity(MapId::wm, gaussian_bump(kN, kC + 4, kC, 1.0, 1.5));
  net.set_activity(MapId::thal_wm, gaussian_bump(kN, kC + 4, kC, 1.0, 1.5));
  for (int t = 0; t < 30; ++t) net.tick(blank_saliency(kN), rng);
  EXPECT_LT(net.activity(MapId::wm).max(), net.spec().theta_off);
  EXPECT_LT(net.activity(MapId::thal_wm).max(), net.spec().theta_off);
}

TEST(Memory, LoopSustainsItselfWhileTheStimulusIsVisible) {
  Network net(default_network_spec());
  net.pin(MapId::focus);
  std::mt19937_64 rng(54);
  const FieldGrid afferent = view({{2.0, 0.0}});
  net.set_activity(MapId::saliency, afferent);
  net.set_activity(MapId::wm, gaussian_bump(kN, kC + 4, kC, 1.0, 1.5));
  net.set_activity(MapId::thal_wm, gaussian_bump(kN, kC + 4, kC, 1.0, 1.5));
  for (int t = 0; t < 1000; ++t) net.tick(afferent, rng);
  EXPECT_TRUE(memorize_check(net, {kC + 4, kC}, net.spec().theta_bump));
  EXPECT_FALSE(memorize_check(net, {kC - 4, kC}, net.spec().theta_bump));
  EXPECT_EQ(count_memory_bumps(net, net.spec().theta_bump), 1);
}

TEST(Memory, HoldsThreeStimuli) {
  Network net(default_network_spec());
  net.pin(MapId::focus);
  std::mt19937_64 rng(55);
  const std::vector<WorldPoint> stimuli = {{-4.0, -2.0}, {3.0, -3.0}, {0.0, 3.0}};
  const FieldGrid afferent = view(stimuli);
  net.set_activity(MapId::saliency, afferent);
  FieldGrid wm(kN);
  for (auto p : stimuli) wm += gaussian_bump(kN, kC + int(p.x * 2), kC + int(p.y * 2), 1.0, 1.5);
  net.set_activity(MapId::wm, wm);
  net.set_activity(MapId::thal_wm, wm);
  for (int t = 0; t < 1000; ++t) net.tick(afferent, rng);
  EXPECT_EQ(count_memory_bumps(net, net.spec().theta_bump), 3);
  for (auto p : stimuli) {
    EXPECT_TRUE(memorize_check(net, {kC + int(p.x * 2), kC + int(p.y * 2)}, net.spec().theta_bump));
  }
}

TEST(Memory, MemorizeCheckRadius) {
  Network net(default_network_spec());
  net.set_activity(MapId::wm, avsearch::testing::delta(kN, 10, 10, 0.5));
  EXPECT_TRUE(memorize_check(net, {10, 12}, 0.3));
  EXPECT_TRUE(memorize_check(net, {11, 11}, 0.3));
  EXPECT_FALSE(memorize_check(net, {12, 12}, 0.3));
  EXPECT_FALSE(memorize_check(net, {10, 13}, 0.3));
  EXPECT_THROW(memorize_check(net, {kN, 0}, 0.3), ConfigError);
}

TEST(InhibitionOfReturn, MemorizedStimulusLosesToAFreshOne) {
  Network net(default_network_spec());
  std::mt19937_64 rng(56);
  const double theta = net.spec().theta_bump;
  const WorldPoint old_stimulus{-3.0, 2.0}, new_stimulus{3.5, -1.5};
  const Cell old_cell{kC - 6, kC + 4}, new_cell{kC + 7, kC - 3};
  const FieldGrid first = view({old_stimulus});
  run_until(net, first, rng, 600, [&](const Network& n) { return count_memory_bumps(n, theta) == 1; });
  for (int t = 0; t < 100; ++t) net.tick(first, rng);
  ASSERT_TRUE(memorize_check(net, old_cell, theta));
  trigger_switch(net, net.spec().switch_ticks);
  const FieldGrid both = view({old_stimulus, new_stimulus});
  run_until(net, both, rng, 200, [](const Network& n) { return n.activity(MapId::focus).max() < n.spec().theta_off; });
  ASSERT_LT(net.activity(MapId::focus).max(), net.spec().theta_off);
  const int used = run_until(net, both, rng, 1500, [](const Network& n) {
    const auto regions = find_regions(n.activity(MapId::focus), n.spec().theta_bump);
    return regions.size() == 1 && regions[0].peak >= 0.9;
  });
  ASSERT_LT(used, 1500);
  const auto& focus = net.activity(MapId::focus);
  EXPECT_LT(focus[old_cell], net.spec().theta_off);
  EXPECT_GE(focus[new_cell], theta);
}

TEST(Memory, PredictionAloneDoesNotRecreateMemory) {
  Network net(default_network_spec());
  std::mt19937_64 rng(57);
  net.pin(MapId::anticipation, gaussian_bump(kN, kC + 5, kC - 2, 1.0, 1.5));
  for (int t = 0; t < 300; ++t) net.tick(blank_saliency(kN), rng);
  EXPECT_LT(net.activity(MapId::wm).max(), net.spec().theta_off);
  EXPECT_LT(net.activity(MapId::focus).max(), net.spec().theta_off);
}

TEST(Memory, PredictionAndSaliencyRebuildMemory) {
  Network net(default_network_spec());
  net.pin(MapId::focus);
  std::mt19937_64 rng(58);
  const FieldGrid afferent = view({{2.5, -1.0}, {-3.0, 3.0}});
  net.set_activity(MapId::saliency, afferent);
  net.pin(MapId::anticipation, gaussian_bump(kN, kC + 5, kC - 2, 1.0, 1.5));
  for (int t = 0; t < 200; ++t) net.tick(afferent, rng);
  EXPECT_TRUE(memorize_check(net, {kC + 5, kC - 2}, net.spec().theta_bump));
  EXPECT_FALSE(memorize_check(net, {kC - 6, kC + 6}, net.spec().theta_bump));
  EXPECT_EQ(count_memory_bumps(net, net.spec().theta_bump), 1);
}
