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

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "xtalk/device/calibration.hpp"

namespace xtalk::device {

// Near-resonance conditions between transition frequencies.
//   R1  neighbors A, B:             w01(A) ~ w01(B)
//   R2  neighbors A, B (ordered):   w01(A) ~ w12(B)
//   R3  triplet (d, t, s):          w01(t) ~ w01(s)
//   R4  triplet (d, t, s):          w01(t) ~ w12(s)
// R3/R4 cover the drive tone at the target frequency hitting a spectator
// coupled to the drive qubit.
enum class CollisionRule { R1, R2, R3, R4 };

std::string to_string(CollisionRule rule);

struct CollisionThresholds {
  double r1_ghz = 0.017;
  double r2_ghz = 0.017;
  double r3_ghz = 0.017;
  double r4_ghz = 0.017;

  double operator[](CollisionRule rule) const;
  // {"R1": 0.01, ...}; missing rules keep their defaults.
  static CollisionThresholds from_json(const nlohmann::json &doc);
};

struct CollisionReport {
  CollisionRule rule;
  std::vector<QubitId> qubits;
  double detuning_ghz; // left-hand side minus right-hand side of the rule
};

std::vector<CollisionReport>
detect_collisions(const DeviceSnapshot &snapshot,
                  const CollisionThresholds &thresholds = {});

nlohmann::json to_json(const std::vector<CollisionReport> &reports);

} // namespace xtalk::device
