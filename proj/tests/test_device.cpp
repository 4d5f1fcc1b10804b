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

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "xtalk/common/error.hpp"
#include "xtalk/device/calibration.hpp"
#include "xtalk/device/collisions.hpp"
#include "xtalk/device/topology.hpp"

using namespace xtalk;
using namespace xtalk::device;
using xtalk::fx::toy_device;

namespace {

// Simple paths with `length` vertices by exhaustive recursion over adjacency
// lists, independent of the library's enumerator.
std::set<std::vector<int>> brute_force_chains(const DeviceSnapshot &s,
                                              int length) {
  std::set<std::vector<int>> out;
  std::vector<int> path;
  std::function<void(int)> grow = [&](int v) {
    path.push_back(v);
    if (static_cast<int>(path.size()) == length)
      out.insert(path);
    else
      for (int w = 0; w < s.num_qubits(); ++w)
        if (s.adjacent(v, w) &&
            std::find(path.begin(), path.end(), w) == path.end())
          grow(w);
    path.pop_back();
  };
  for (int v = 0; v < s.num_qubits(); ++v)
    grow(v);
  return out;
}

} // namespace

TEST(Snapshot, LoadsFixture) {
  const auto s = fx::ehningen();
  EXPECT_EQ(s.name(), "ibmq_ehningen");
  EXPECT_EQ(s.num_qubits(), 27);
  EXPECT_EQ(s.edges().size(), 28u);
  for (const auto &q : s.qubits())
    EXPECT_LE(q.t2_us, 2 * q.t1_us);
}

TEST(Snapshot, JsonRoundTrip) {
  const auto s = fx::ehningen();
  const auto again = snapshot_from_json(to_json(s));
  EXPECT_EQ(to_json(again), to_json(s));
}

TEST(Snapshot, RejectsT2AboveTwiceT1) {
  fx::ToyParams p;
  p.t1_us = 50;
  p.t2_us = 101;
  try {
    toy_device(2, {{0, 1}}, p);
    FAIL() << "expected InvariantError";
  } catch (const InvariantError &e) {
    EXPECT_EQ(e.field(), "qubits[0].t2_us");
  }
}

TEST(Snapshot, RejectsUnknownEdgeEndpointAndDisconnectedGraph) {
  EXPECT_THROW(toy_device(2, {{0, 2}}), InvariantError);
  EXPECT_THROW(toy_device(3, {{0, 1}}), InvariantError);
}

TEST(Snapshot, MalformedJsonIsParseError) {
  std::istringstream in("{\"qubits\": [");
  EXPECT_THROW(load_snapshot(in), ParseError);
}

TEST(Snapshot, EdgeLookupInBothOrientations) {
  const auto s = toy_device(3, {{1, 0}, {1, 2}});
  ASSERT_NE(s.find_edge(0, 1), nullptr);
  EXPECT_EQ(s.find_edge(0, 1)->drive, 1);
  EXPECT_EQ(s.native_edge(0, 1), nullptr);
  EXPECT_NE(s.native_edge(1, 0), nullptr);
  EXPECT_EQ(s.find_edge(0, 2), nullptr);
}

TEST(Triplets, ToyDeviceHasOne) {
  const auto s = toy_device(3, {{1, 0}, {2, 1}});
  const auto t = extract_triplets(s);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], (Triplet{1, 0, 2}));
  EXPECT_EQ(schedule_batches(t, s).size(), 1u);
}

TEST(Triplets, StructuralPropertiesOnFixture) {
  const auto s = fx::ehningen();
  const auto triplets = extract_triplets(s);
  std::size_t expected = 0;
  for (const auto &e : s.edges())
    expected += s.neighbors(e.drive).size() - 1;
  EXPECT_EQ(triplets.size(), expected);
  for (const auto &t : triplets) {
    EXPECT_NO_THROW(check_triplet(t, s));
    EXPECT_TRUE(s.adjacent(t.drive, t.spectator));
    EXPECT_NE(t.spectator, t.target);
  }
  EXPECT_TRUE(std::is_sorted(triplets.begin(), triplets.end()));
}

TEST(Triplets, FixtureMatchesPublishedBatchList) {
  const auto s = fx::ehningen();
  std::set<Triplet> published;
  for (const auto &b : fx::published_batches())
    published.insert(b.begin(), b.end());
  const auto extracted = extract_triplets(s);
  EXPECT_EQ(std::set<Triplet>(extracted.begin(), extracted.end()), published);
}

TEST(Triplets, CheckRejectsInvalid) {
  const auto s = toy_device(3, {{1, 0}, {2, 1}});
  EXPECT_THROW(check_triplet({0, 1, 2}, s), InvariantError); // wrong orientation
  EXPECT_THROW(check_triplet({1, 0, 0}, s), InvariantError);
  EXPECT_THROW(check_triplet({2, 1, 0}, s), InvariantError); // 0 not next to 2
}

TEST(Batches, PublishedBatchesAreValid) {
  const auto s = fx::ehningen();
  const auto batches = fx::published_batches();
  EXPECT_EQ(batches.size(), 12u);
  const auto v = validate_batches(batches, s);
  for (const auto &x : v)
    ADD_FAILURE() << x.message;
}

TEST(Batches, GreedyScheduleIsValidAndCompact) {
  const auto s = fx::ehningen();
  const auto triplets = extract_triplets(s);
  const auto batches = schedule_batches(triplets, s);
  EXPECT_LE(batches.size(), 13u);
  EXPECT_TRUE(validate_batches(batches, s).empty());
}

TEST(Batches, ConflictRule) {
  // 0-1-2-3-4 line, drives on lower ids.
  const auto s = toy_device(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  EXPECT_TRUE(triplets_conflict({1, 2, 0}, {2, 3, 1}, s)); // shared qubits
  EXPECT_TRUE(triplets_conflict({1, 0, 2}, {3, 4, 2}, s)); // shared spectator
  // Drive 3 of the second is adjacent to qubit 2 of the first.
  EXPECT_TRUE(triplets_conflict({1, 2, 0}, {3, 4, 2}, s));

  const auto line7 =
      toy_device(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  EXPECT_FALSE(triplets_conflict({1, 2, 0}, {5, 6, 4}, line7));
  // Qubits 2 and 3 are coupled, but neither is a drive.
  EXPECT_FALSE(triplets_conflict({1, 2, 0}, {4, 5, 3}, line7));
}

TEST(Batches, ValidationReportsEveryKind) {
  const auto s = toy_device(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const auto all = extract_triplets(s);
  std::vector<Batch> batches{{all[0]}, {all[0]}};
  const auto v = validate_batches(batches, s);
  bool duplicate = false, missing = false;
  for (const auto &x : v) {
    duplicate |= x.kind == BatchViolation::Kind::Duplicate;
    missing |= x.kind == BatchViolation::Kind::Missing;
  }
  EXPECT_TRUE(duplicate);
  EXPECT_TRUE(missing);
  std::vector<Batch> conflicting{{Triplet{1, 2, 0}, Triplet{2, 3, 1}}};
  bool conflict = false;
  for (const auto &x : validate_batches(conflicting, s, std::vector<Triplet>{
                                            {1, 2, 0}, {2, 3, 1}}))
    conflict |= x.kind == BatchViolation::Kind::Conflict;
  EXPECT_TRUE(conflict);
}

TEST(Batches, JsonRoundTrip) {
  const auto batches = fx::published_batches();
  EXPECT_EQ(batches_from_json(batches_to_json(batches)), batches);
  EXPECT_THROW(batches_from_json(nlohmann::json::parse("[[{\"pair\":[1]}]]")),
               ParseError);
}

TEST(Chains, MatchBruteForceOracle) {
  const auto s = fx::ehningen();
  for (int len : {1, 2, 3, 5, 8}) {
    const auto chains = enumerate_chains(s, len);
    const std::set<std::vector<int>> got(chains.begin(), chains.end());
    EXPECT_EQ(got.size(), chains.size());
    EXPECT_EQ(got, brute_force_chains(s, len)) << "length " << len;
  }
}

TEST(Chains, EightQubitLayoutsOnFixture) {
  const auto s = fx::ehningen();
  EXPECT_EQ(enumerate_chains(s, 8).size(), 132u);
  EXPECT_EQ(enumerate_chains(s, 8, ChainOrientation::Undirected).size(), 66u);
  EXPECT_EQ(enumerate_chains(s, 2).size(), 2 * s.edges().size());
  EXPECT_EQ(enumerate_chains(s, 1).size(), 27u);
}

TEST(Chains, RejectsLengthOutsideTopology) {
  const auto s = fx::ehningen();
  EXPECT_THROW(enumerate_chains(s, 0), InputError);
  EXPECT_THROW(enumerate_chains(s, 28), InputError);
  EXPECT_TRUE(enumerate_chains(s, 27).empty()); // heavy-hex has no Hamiltonian path
}

TEST(Collisions, ResonantNeighborsGiveOneR1) {
  std::vector<QubitCalibration> qs{{0, 5.000, -0.33, 100, 100, 0, 0, 0, 35},
                                   {1, 5.010, -0.33, 100, 100, 0, 0, 0, 35}};
  DeviceSnapshot s("pair", "", qs, {{0, 1, 0.01, 300}});
  const auto r = detect_collisions(s);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].rule, CollisionRule::R1);
  EXPECT_NEAR(r[0].detuning_ghz, -0.010, 1e-12);
}

TEST(Collisions, WellSeparatedDeviceIsClean) {
  EXPECT_TRUE(detect_collisions(toy_device(4, {{0, 1}, {1, 2}, {2, 3}})).empty());
}

TEST(Collisions, ExactR2Resonance) {
  // w01(1) = w12(0) = 5.0 - 0.33.
  std::vector<QubitCalibration> qs{{0, 5.0, -0.33, 100, 100, 0, 0, 0, 35},
                                   {1, 4.67, -0.33, 100, 100, 0, 0, 0, 35}};
  DeviceSnapshot s("r2", "", qs, {{0, 1, 0.01, 300}});
  const auto r = detect_collisions(s);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].rule, CollisionRule::R2);
  EXPECT_EQ(r[0].qubits, (std::vector<QubitId>{1, 0}));
  EXPECT_NEAR(r[0].detuning_ghz, 0.0, 1e-12);
}

TEST(Collisions, SpectatorRules) {
  // Triplet (1, 0, 2): w01(0) close to w01(2) triggers R3.
  std::vector<QubitCalibration> qs{{0, 5.000, -0.33, 100, 100, 0, 0, 0, 35},
                                   {1, 5.300, -0.33, 100, 100, 0, 0, 0, 35},
                                   {2, 5.005, -0.33, 100, 100, 0, 0, 0, 35}};
  DeviceSnapshot s("r3", "", qs, {{1, 0, 0.01, 300}, {1, 2, 0.01, 300}});
  bool r3 = false;
  for (const auto &r : detect_collisions(s))
    if (r.rule == CollisionRule::R3 && r.qubits == std::vector<QubitId>{1, 0, 2}) {
      r3 = true;
      EXPECT_NEAR(r.detuning_ghz, -0.005, 1e-12);
    }
  EXPECT_TRUE(r3);
}

TEST(Collisions, ThresholdsFromJson) {
  const auto t = CollisionThresholds::from_json(nlohmann::json{{"R2", 0.05}});
  EXPECT_EQ(t[CollisionRule::R2], 0.05);
  EXPECT_EQ(t[CollisionRule::R1], 0.017);
  EXPECT_THROW(CollisionThresholds::from_json(nlohmann::json{{"R1", -1.0}}),
               InputError);
}
