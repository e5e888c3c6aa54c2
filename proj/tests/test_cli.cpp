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

#include "aerofetch/cli.hpp"
#include "aerofetch/scene.hpp"
#include "aerofetch/scene_io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace aerofetch
{
namespace
{

namespace fs = std::filesystem;

struct CliResult
{
  int code{0};
  std::string out;
  std::string err;
};

CliResult cli(std::initializer_list<std::string> args)
{
  std::vector<std::string> owned{"aerofetch"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto & a : owned) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const auto * info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("aerofetch_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string & name, const std::string & text) const
  {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string read(const fs::path & p)
  {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, SingleRunWritesThreeFiles)
{
  const std::string out = (dir_ / "out").string();
  const CliResult r = cli({"run", "--prompt", "pick up the red cup", "--out-dir", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> names;
  for (const auto & e : fs::directory_iterator(out)) {
    names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  EXPECT_EQ(
    names, (std::vector<std::string>{"trial_000.json", "trial_000.svg", "trial_000_trajectory.csv"}));
  const auto doc = nlohmann::json::parse(read(fs::path(out) / "trial_000.json"));
  EXPECT_EQ(doc["outcome"]["success"], true);
}

TEST_F(CliTest, BatchRunsAreByteIdentical)
{
  const std::string a = (dir_ / "a").string();
  const std::string b = (dir_ / "b").string();
  ASSERT_EQ(cli({"run", "--trials", "3", "--seed", "7", "--out-dir", a}).code, kExitOk);
  ASSERT_EQ(cli({"run", "--trials", "3", "--seed", "7", "--out-dir", b}).code, kExitOk);
  int files = 0;
  for (const auto & e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(read(e.path()), read(fs::path(b) / e.path().filename())) << e.path();
  }
  EXPECT_EQ(files, 3 * 3 + 1);
  EXPECT_TRUE(fs::exists(fs::path(a) / "aggregate_metrics.csv"));
}

TEST_F(CliTest, PromptErrorsExitThreeWithCaret)
{
  const CliResult r = cli({"run", "--prompt", "pick up the unicorn", "--out-dir", dir_.string()});
  EXPECT_EQ(r.code, kExitPrompt);
  EXPECT_NE(r.err.find("unicorn"), std::string::npos);
  EXPECT_NE(r.err.find("            ^"), std::string::npos);
  EXPECT_EQ(cli({"run", "--prompt", "pick up the", "--out-dir", dir_.string()}).code, kExitPrompt);
}

TEST_F(CliTest, ConfigErrorsExitTwo)
{
  EXPECT_EQ(cli({"run", "--set", "planner.warp=1", "--out-dir", dir_.string()}).code, kExitConfig);
  EXPECT_EQ(
    cli({"run", "--handover-mode", "sideways", "--out-dir", dir_.string()}).code, kExitConfig);
  EXPECT_EQ(cli({"run", "--scene", "/nonexistent.json"}).code, kExitConfig);
  EXPECT_EQ(cli({"run", "--trials", "0", "--out-dir", dir_.string()}).code, kExitConfig);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(cli({}).code, kExitConfig);
}

TEST_F(CliTest, ValidateReportsOkAndViolations)
{
  const std::string good = write("good.json", scene_to_json(default_lab_scene()));
  CliResult r = cli({"validate", good});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "OK\n");

  Scene s = default_lab_scene();
  s.objects[0].position = {2.5, 2.5, s.table.height};
  const std::string bad = write("bad.json", scene_to_json(s));
  r = cli({"validate", bad});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("violation: object '" + s.objects[0].id + "': off the table"), std::string::npos);

  const std::string broken = write("broken.json", "{\n  \"room\": [\n");
  r = cli({"validate", broken});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("malformed JSON at line 3"), std::string::npos);
}

TEST_F(CliTest, PlanWritesDumps)
{
  const std::string out = (dir_ / "plan").string();
  const CliResult r = cli({"plan", "--from", "home", "--to", "human", "--out-dir", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(fs::path(out) / "plan_waypoints.csv"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "plan_grid.pgm"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "plan.svg"));
}

TEST_F(CliTest, EnclosedGoalExitsFour)
{
  Scene s = default_lab_scene();
  s.human.center = {2.0, 2.0, 0.0};
  const std::string scene = write("corner.json", scene_to_json(s));
  const CliResult r = cli(
    {"plan", "--scene", scene, "--from", "home", "--to", "xy:2.95,2.95", "--out-dir",
     (dir_ / "p").string()});
  EXPECT_EQ(r.code, kExitPlanning) << r.err;
  EXPECT_NE(r.err.find("no path"), std::string::npos);
  EXPECT_EQ(
    cli({"plan", "--to", "object:nothing", "--out-dir", (dir_ / "q").string()}).code, kExitConfig);
}

TEST_F(CliTest, KeysAndSceneSubcommands)
{
  CliResult r = cli({"keys"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("planner.safety_margin\n"), std::string::npos);
  r = cli({"scene"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NO_THROW(parse_scene_document(r.out));
}

}  // namespace
}  // namespace aerofetch
