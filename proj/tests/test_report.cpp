// Copyright 2026 The aerofetch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aerofetch/batch.hpp"
#include "aerofetch/errors.hpp"
#include "aerofetch/report.hpp"
#include "aerofetch/scene_io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace aerofetch
{
namespace
{

std::vector<std::string> lines_of(const std::string & text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

class ReportTest : public ::testing::Test
{
protected:
  static void SetUpTestSuite()
  {
    scene_ = new Scene(default_lab_scene());
    const TaskQueue q = parse_prompt("pick up the red cup", Vocabulary::from_scene(*scene_));
    results_ = new std::vector<TrialResult>(run_batch(*scene_, q, MissionParams{}, 7, 3));
  }
  static void TearDownTestSuite()
  {
    delete results_;
    delete scene_;
  }
  static Scene * scene_;
  static std::vector<TrialResult> * results_;
};

Scene * ReportTest::scene_ = nullptr;
std::vector<TrialResult> * ReportTest::results_ = nullptr;

TEST_F(ReportTest, JsonHasDocumentedTopLevelKeys)
{
  const auto & r = results_->front();
  const auto doc = nlohmann::ordered_json::parse(report_json(r, "pick up the red cup", {}));
  std::vector<std::string> keys;
  for (const auto & [k, _] : doc.items()) {
    keys.push_back(k);
  }
  EXPECT_EQ(keys, report_keys());
  EXPECT_EQ(doc["prompt"], "pick up the red cup");
  EXPECT_EQ(doc["trial"], 0);
  EXPECT_EQ(doc["seed"].get<std::uint64_t>(), r.seed);
  EXPECT_EQ(doc["legs"].size(), r.log.legs.size());
  EXPECT_EQ(doc["gripper_events"].size(), r.log.gripper_events.size());
}

TEST_F(ReportTest, TrajectoryCsvShape)
{
  const auto & log = results_->front().log;
  const auto lines = lines_of(trajectory_csv(log));
  ASSERT_EQ(lines.size(), log.ticks.size() + 1);
  EXPECT_EQ(lines[0], "t,x,y,z,yaw,state,gripper");
  for (std::size_t k = 1; k < lines.size(); k += 97) {
    EXPECT_EQ(std::count(lines[k].begin(), lines[k].end(), ','), 6);
  }
  EXPECT_EQ(lines[1].substr(0, 5), "0.02,");
}

TEST_F(ReportTest, AggregateCsvHasRowPerTrialPlusAggregate)
{
  const auto lines = lines_of(aggregate_csv(*results_));
  ASSERT_EQ(lines.size(), results_->size() + 2);
  EXPECT_EQ(lines[0].substr(0, 19), "trial,seed,success,");
  EXPECT_EQ(lines.back().substr(0, 14), "aggregate,,3/3");
}

TEST_F(ReportTest, SvgIsWellFormedEnvelope)
{
  const auto & r = results_->front();
  const std::string svg = mission_svg(r.scene, r.log, {});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
  EXPECT_NE(svg.find("polyline"), std::string::npos);
}

TEST_F(ReportTest, BatchRandomizesScenesValidly)
{
  std::set<double> xs;
  for (const auto & r : *results_) {
    EXPECT_TRUE(validate_scene(r.scene).empty());
    EXPECT_TRUE(r.log.outcome.success) << r.log.outcome.failure_mode;
    xs.insert(r.scene.objects.front().position.x);
  }
  EXPECT_EQ(xs.size(), results_->size());
}

TEST(Batch, TrialSeedsAreDistinctAndStable)
{
  std::set<std::uint64_t> seeds;
  for (int k = 0; k < 100; ++k) {
    seeds.insert(trial_seed(7, k));
  }
  EXPECT_EQ(seeds.size(), 100u);
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(Batch, SingleTrialKeepsBaseScene)
{
  const Scene base = default_lab_scene();
  EXPECT_EQ(scene_to_json(trial_scene(base, 7, 0, 1)), scene_to_json(base));
  EXPECT_NE(scene_to_json(trial_scene(base, 7, 0, 2)), scene_to_json(base));
}

TEST(Batch, RandomPlacementKeepsGaps)
{
  const Scene base = default_lab_scene();
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Scene s = randomize_objects(base, rng);
    ASSERT_TRUE(validate_scene(s).empty());
    for (std::size_t a = 0; a < s.objects.size(); ++a) {
      const auto & oa = s.objects[a];
      ASSERT_LE(std::abs(oa.position.x - s.table.center.x), s.table.half_x - oa.radius);
      ASSERT_LE(std::abs(oa.position.y - s.table.center.y), s.table.half_y - oa.radius);
      for (std::size_t b = a + 1; b < s.objects.size(); ++b) {
        const auto & ob = s.objects[b];
        ASSERT_GE(distance_xy(oa.position, ob.position), oa.radius + ob.radius + 0.1);
      }
    }
  }
}

TEST(Batch, ImpossiblePlacementIsAConfigError)
{
  Scene s = default_lab_scene();
  Rng rng(1);
  EXPECT_THROW(randomize_objects(s, rng, 5.0), ConfigError);
  s.objects[0].radius = 2.0;
  EXPECT_THROW(randomize_objects(s, rng), ConfigError);
}

TEST(PlanOutputs, WaypointsAndGrid)
{
  PlannedPath p;
  p.waypoints = {{0.05, 0.05}, {1.25, -0.5}};
  EXPECT_EQ(waypoints_csv(p).substr(0, 10), "index,x,y\n");
  EXPECT_EQ(lines_of(waypoints_csv(p)).size(), 3u);

  OccupancyGrid g({0.0, 0.3, 0.0, 0.2}, 0.1);
  g.set_occupied({1, 0}, true);
  const auto lines = lines_of(grid_pgm(g));
  ASSERT_GE(lines.size(), 4u);
  EXPECT_EQ(lines[0], "P2");
  EXPECT_EQ(lines[2], "3 2");
  EXPECT_EQ(lines[3], "255");
  // Rows run top (largest y) to bottom.
  EXPECT_EQ(lines[4], "255 255 255");
  EXPECT_EQ(lines[5], "255 0 255");
}

}  // namespace
}  // namespace aerofetch
