// Copyright 2026 The xtalk Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "json.hpp"
#include "xtalk/device/calibration.hpp"
#include "xtalk/noise/crosstalk.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xtalk;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("xtalk_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  std::string write(const std::string &name, const std::string &text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  Result run(const std::string &args) const {
    const std::string log = path("stdout.txt");
    const std::string cmd = std::string("cd '") + dir_.string() + "' && '" +
                            XTALK_CLI_PATH + "' " + args + " > '" + log +
                            "' 2>&1";
    Result r;
    const int status = std::system(cmd.c_str());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream s;
    s << in.rdbuf();
    r.out = s.str();
    return r;
  }

  static std::string slurp(const std::string &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::string toy_calibration(const fx::ToyParams &p = {}) const {
    return write("toy.json", device::to_json(fx::line_device(3, p)).dump());
  }

  fs::path dir_;
};

fx::ToyParams base_rates() {
  fx::ToyParams p;
  p.cx_error = 0.02;
  p.sq_error = 0.002;
  return p;
}

} // namespace

TEST_F(Cli, PlanEhningen) {
  const auto r = run("plan --calibration " + fx::data_path("ehningen_topology.json") +
                     " --out plan.json");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("43 triplets, 11 batches"), std::string::npos) << r.out;
  const auto doc = json::parse(slurp(path("plan.json")));
  EXPECT_EQ(doc["triplets"].size(), 43u);
  EXPECT_TRUE(fs::exists(path("plan.json.manifest.json")));
}

TEST_F(Cli, PlanToy) {
  const auto r = run("plan --calibration " + toy_calibration() + " --out plan.json");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("1 triplets, 1 batches"), std::string::npos) << r.out;
}

TEST_F(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("plan --calibration " + write("bad.json", "{\"qubits\": [") +
                " --out p.json")
                .code,
            2);
  EXPECT_EQ(run("characterize --calibration missing.json --out c.json").code, 2);
  EXPECT_EQ(run("sweep --calibration " + fx::data_path("ehningen_topology.json") +
                " --ladder 30 --model standard --out sw")
                .code,
            2);
  EXPECT_EQ(run("sweep --calibration " + toy_calibration() +
                " --model crosstalk --ladder 2 --out sw")
                .code,
            2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("characterize --calibration " + toy_calibration() +
                " --config huge --out c.json")
                .code,
            2);
}

TEST_F(Cli, CharacterizeRecoversBaseRates) {
  const auto cal = toy_calibration(base_rates());
  auto entry = [&](const std::string &preset) {
    const auto r = run("characterize --calibration " + cal + " --config " +
                       preset + " --seed 4 --out " + preset + ".json");
    EXPECT_EQ(r.code, 0) << r.out;
    const auto table = noise::table_from_json(
        json::parse(slurp(path(preset + ".json")))["table"]);
    EXPECT_EQ(table.size(), 1u);
    return table.begin()->second;
  };
  EXPECT_NEAR(entry("desk").cx_sim_error, 0.02, 0.15 * 0.02);
  // Four lengths up to 60 barely bend a 0.2% decay, so the spectator rate
  // is only checked with the longer preset.
  const auto paper = entry("paper");
  EXPECT_NEAR(paper.cx_sim_error, 0.02, 0.15 * 0.02);
  EXPECT_NEAR(paper.sq_sim_error, 0.002, 0.3 * 0.002);
}

TEST_F(Cli, CharacterizeSeesInjection) {
  const auto cal = toy_calibration(base_rates());
  const auto inj = write("inject.json",
                         R"([{"pair":[1,2],"spectator":0,"weight":0.1}])");
  ASSERT_EQ(run("characterize --calibration " + cal +
                " --config desk --seed 4 --out clean.json")
                .code,
            0);
  ASSERT_EQ(run("characterize --calibration " + cal + " --inject " + inj +
                " --config desk --seed 4 --out hot.json")
                .code,
            0);
  const auto clean = json::parse(slurp(path("clean.json")))["table"][0];
  const auto hot = json::parse(slurp(path("hot.json")))["table"][0];
  EXPECT_GT(hot["cx_sim_error"].get<double>(),
            2.0 * clean["cx_sim_error"].get<double>());
}

TEST_F(Cli, DeterministicAndReplayable) {
  const auto cal = toy_calibration(base_rates());
  ASSERT_EQ(run("characterize --calibration " + cal +
                " --config desk --seed 9 --out a.json")
                .code,
            0);
  const auto first = slurp(path("a.json"));
  ASSERT_EQ(run("characterize --calibration " + cal +
                " --config desk --seed 9 --out a.json")
                .code,
            0);
  EXPECT_EQ(slurp(path("a.json")), first);
  fs::remove(path("a.json"));
  ASSERT_EQ(run("--manifest a.json.manifest.json").code, 0);
  EXPECT_EQ(slurp(path("a.json")), first);
  const auto manifest = json::parse(slurp(path("a.json.manifest.json")));
  for (const char *key : {"command", "argv", "inputs", "outputs", "seed",
                          "config", "version", "started", "finished"})
    EXPECT_TRUE(manifest.contains(key)) << key;
}

TEST_F(Cli, SweepWritesRecordsPerSource) {
  const auto cal = toy_calibration(base_rates());
  ASSERT_EQ(run("characterize --calibration " + cal +
                " --config desk --seed 1 --out table.json")
                .code,
            0);
  const auto r = run("sweep --calibration " + cal +
                     " --table table.json --ladder 3 --model both --shots 2000 "
                     "--seed 2 --out sw");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto csv = slurp(path("sw/records.csv"));
  // 2 directed layouts x 4 sources + header.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
  const auto cmp = json::parse(slurp(path("sw/comparison.json")));
  EXPECT_TRUE(cmp.contains("standard"));
  EXPECT_TRUE(cmp.contains("crosstalk"));
  EXPECT_TRUE(fs::exists(path("sw/manifest.json")));
  EXPECT_TRUE(fs::exists(path("sw/plot_crosstalk.json")));
}

TEST_F(Cli, Collisions) {
  // Two neighbors with identical frequencies: a single R1 match.
  auto doc = device::to_json(fx::line_device(2));
  doc["qubits"][1]["frequency_ghz"] = doc["qubits"][0]["frequency_ghz"];
  const auto cal = write("resonant.json", doc.dump());
  const auto r = run("collisions --calibration " + cal + " --out c.json");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rep = json::parse(slurp(path("c.json")));
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_EQ(rep[0]["rule"], "R1");
  EXPECT_EQ(rep[0]["detuning_ghz"], 0.0);

  const auto clean = run("collisions --calibration " + toy_calibration() +
                         " --out clean.json");
  ASSERT_EQ(clean.code, 0);
  EXPECT_TRUE(json::parse(slurp(path("clean.json"))).empty());
}
