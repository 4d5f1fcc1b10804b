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

#include "xtalk/device/collisions.hpp"

#include <cmath>

#include "xtalk/common/error.hpp"
#include "xtalk/device/topology.hpp"

namespace xtalk::device {

std::string to_string(CollisionRule rule) {
  switch (rule) {
  case CollisionRule::R1:
    return "R1";
  case CollisionRule::R2:
    return "R2";
  case CollisionRule::R3:
    return "R3";
  case CollisionRule::R4:
    return "R4";
  }
  return "?";
}

double CollisionThresholds::operator[](CollisionRule rule) const {
  switch (rule) {
  case CollisionRule::R1:
    return r1_ghz;
  case CollisionRule::R2:
    return r2_ghz;
  case CollisionRule::R3:
    return r3_ghz;
  case CollisionRule::R4:
    return r4_ghz;
  }
  return 0.0;
}

CollisionThresholds CollisionThresholds::from_json(const nlohmann::json &doc) {
  if (!doc.is_object())
    throw ParseError("thresholds: expected an object");
  CollisionThresholds t;
  auto read = [&](const char *key, double &dst) {
    auto it = doc.find(key);
    if (it == doc.end())
      return;
    if (!it->is_number())
      throw ParseError(std::string("thresholds.") + key + ": expected a number");
    dst = it->get<double>();
    if (!(dst > 0.0))
      throw InvariantError(std::string("thresholds.") + key,
                           "must be positive");
  };
  read("R1", t.r1_ghz);
  read("R2", t.r2_ghz);
  read("R3", t.r3_ghz);
  read("R4", t.r4_ghz);
  return t;
}

std::vector<CollisionReport>
detect_collisions(const DeviceSnapshot &snapshot,
                  const CollisionThresholds &thresholds) {
  for (auto rule : {CollisionRule::R1, CollisionRule::R2, CollisionRule::R3,
                    CollisionRule::R4})
    if (!(thresholds[rule] > 0.0))
      throw InvariantError("thresholds." + to_string(rule), "must be positive");

  std::vector<CollisionReport> out;
  auto consider = [&](CollisionRule rule, std::vector<QubitId> qubits,
                      double detuning) {
    if (std::abs(detuning) < thresholds[rule])
      out.push_back({rule, std::move(qubits), detuning});
  };

  const auto edges = snapshot.undirected_edges();
  for (auto [a, b] : edges)
    consider(CollisionRule::R1, {a, b},
             snapshot.qubit(a).frequency_ghz - snapshot.qubit(b).frequency_ghz);
  for (auto [a, b] : edges) {
    consider(CollisionRule::R2, {a, b},
             snapshot.qubit(a).frequency_ghz -
                 snapshot.qubit(b).frequency_12_ghz());
    consider(CollisionRule::R2, {b, a},
             snapshot.qubit(b).frequency_ghz -
                 snapshot.qubit(a).frequency_12_ghz());
  }
  const auto triplets = extract_triplets(snapshot);
  for (const auto &t : triplets)
    consider(CollisionRule::R3, {t.drive, t.target, t.spectator},
             snapshot.qubit(t.target).frequency_ghz -
                 snapshot.qubit(t.spectator).frequency_ghz);
  for (const auto &t : triplets)
    consider(CollisionRule::R4, {t.drive, t.target, t.spectator},
             snapshot.qubit(t.target).frequency_ghz -
                 snapshot.qubit(t.spectator).frequency_12_ghz());
  return out;
}

nlohmann::json to_json(const std::vector<CollisionReport> &reports) {
  auto doc = nlohmann::json::array();
  for (const auto &r : reports)
    doc.push_back({{"rule", to_string(r.rule)},
                   {"qubits", r.qubits},
                   {"detuning_ghz", r.detuning_ghz}});
  return doc;
}

} // namespace xtalk::device
