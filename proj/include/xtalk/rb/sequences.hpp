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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "xtalk/circuit/circuit.hpp"
#include "xtalk/device/topology.hpp"

namespace xtalk::rb {

struct RBConfig {
  std::vector<int> lengths;
  int repetitions = 1;
  std::int64_t shots = 1;
  std::uint64_t seed = 0;

  // lengths [1, 3, 10, 20, 40, 65, 95, 130, 175], 5 repetitions, 10^4 shots.
  static RBConfig paper(std::uint64_t seed = 0);
  // lengths [1, 5, 20, 60], 3 repetitions, 2000 shots.
  static RBConfig desk(std::uint64_t seed = 0);
  // "paper" or "desk"; throws InputError otherwise.
  static RBConfig preset(const std::string &name, std::uint64_t seed);

  // Throws InputError unless lengths are strictly increasing and >= 1 and
  // repetitions, shots >= 1.
  void validate() const;
};

nlohmann::json to_json(const RBConfig &config);

struct RBCircuit {
  int length = 0;
  int repetition = 0;
  circuit::Circuit circuit;
};

// Clifford indices of one sequence (without the inverse), drawn from the
// stream (seed, targets, length, repetition). The same targets always get the
// same sequences, in isolated and simultaneous circuits alike.
std::vector<std::size_t> sequence_indices(std::span<const QubitId> targets,
                                          int length, int repetition,
                                          std::uint64_t seed);

// Gates of one sequence layer by layer: `length` random Cliffords followed by
// the inverse of their product, on physical `targets` (1 or 2 qubits; a pair
// is used in its given orientation for CX).
std::vector<std::vector<circuit::Gate>>
sequence_layers(std::span<const QubitId> targets, int length, int repetition,
                std::uint64_t seed);

// Isolated RB on 1 or 2 target qubits: each Clifford layer is followed by a
// BARRIER over the targets, then the targets are measured. Ordered by
// length, then repetition. `num_qubits` defaults to max(target) + 1.
std::vector<RBCircuit> build_rb_circuits(std::span<const QubitId> targets,
                                         const RBConfig &config,
                                         int num_qubits = 0);

// Simultaneous RB of every triplet in `batch`: per triplet, two-qubit RB on
// (drive, target) and single-qubit RB on the spectator in lockstep, with a
// BARRIER over the triplet after each layer. Each triplet measures drive,
// target, spectator in that order, triplets in batch order.
std::vector<RBCircuit> build_batch_rb(std::span<const device::Triplet> batch,
                                      const RBConfig &config,
                                      int num_qubits = 0);

std::vector<RBCircuit> build_simultaneous_rb(const device::Triplet &triplet,
                                             const RBConfig &config,
                                             int num_qubits = 0);

} // namespace xtalk::rb
