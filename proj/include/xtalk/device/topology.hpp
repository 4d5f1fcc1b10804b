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

#include <array>
#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "xtalk/device/calibration.hpp"

namespace xtalk::device {

// A directed pair plus one neighbor of its drive qubit.
struct Triplet {
  QubitId drive = 0;
  QubitId target = 0;
  QubitId spectator = 0;

  std::array<QubitId, 3> qubits() const { return {drive, target, spectator}; }
  auto operator<=>(const Triplet &) const = default;
};

std::string to_string(const Triplet &t);

// Triplets characterized together. Kept sorted.
using Batch = std::vector<Triplet>;

// One triplet per (calibrated edge, neighbor of the drive other than the
// target), sorted by (drive, target, spectator).
std::vector<Triplet> extract_triplets(const DeviceSnapshot &snapshot);

// Throws InvariantError when the triplet is not realizable on the device.
void check_triplet(const Triplet &t, const DeviceSnapshot &snapshot);

// Two triplets may not share a batch when they share a qubit, or when the
// drive qubit of either is coupled to any qubit of the other.
bool triplets_conflict(const Triplet &a, const Triplet &b,
                       const DeviceSnapshot &snapshot);

// Greedy smallest-index coloring of the conflict graph in sorted triplet
// order.
std::vector<Batch> schedule_batches(std::span<const Triplet> triplets,
                                    const DeviceSnapshot &snapshot);

struct BatchViolation {
  enum class Kind { InvalidTriplet, Conflict, Duplicate, Missing, Unexpected };
  Kind kind;
  int batch = -1; // -1 for coverage violations
  std::vector<Triplet> triplets;
  std::string message;
};

// Empty iff every batch is conflict-free and the batches cover `expected`
// exactly once.
std::vector<BatchViolation> validate_batches(std::span<const Batch> batches,
                                             const DeviceSnapshot &snapshot,
                                             std::span<const Triplet> expected);
// Coverage is checked against extract_triplets(snapshot).
std::vector<BatchViolation> validate_batches(std::span<const Batch> batches,
                                             const DeviceSnapshot &snapshot);

enum class ChainOrientation {
  Directed,  // both orientations of every path are kept
  Undirected // only the lexicographically smaller orientation
};

// All simple paths with `length` vertices in the coupling graph, sorted.
std::vector<std::vector<QubitId>>
enumerate_chains(const DeviceSnapshot &snapshot, int length,
                 ChainOrientation orientation = ChainOrientation::Directed);

// Batch JSON: [[{"pair":[drive,target],"spectator":id}, ...], ...]
std::vector<Batch> batches_from_json(const nlohmann::json &doc);
std::vector<Batch> load_batches_file(const std::string &path);
nlohmann::json batches_to_json(std::span<const Batch> batches);
nlohmann::json triplet_to_json(const Triplet &t);
Triplet triplet_from_json(const nlohmann::json &obj, const std::string &field);

} // namespace xtalk::device
