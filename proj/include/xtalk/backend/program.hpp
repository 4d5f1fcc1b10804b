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
#include <vector>

#include "xtalk/noise/model.hpp"
#include "xtalk/simulator/density_matrix.hpp"
#include "xtalk/simulator/sampling.hpp"

namespace xtalk::backend {

// Largest connected set of qubits simulated as one density matrix.
inline constexpr int kMaxComponentQubits = 12;

// One superoperator on local qubit positions of a component.
struct Step {
  std::vector<int> qubits;
  Matrix superop;
};

// Qubits coupled by some multi-qubit operation, simulated jointly. Qubits are
// sorted physical ids; local position j holds qubits[j].
struct Component {
  std::vector<QubitId> qubits;
  std::vector<Step> steps;
  std::vector<int> readout_bits; // indices into Program::readout_order
};

struct Program {
  std::vector<Component> components;
  std::vector<QubitId> readout_order;
  std::vector<sim::ReadoutError> readout;
};

// Splits a bound model into independent components and fuses each
// component's operations into as few superoperators as possible. Throws
// InputError when a component exceeds kMaxComponentQubits.
Program compile(const noise::BoundNoiseModel &model);

sim::DensityMatrix execute(const Component &component);

// Distribution of a component's readout bits (bit k is readout_bits[k]),
// before readout error.
std::vector<double> component_distribution(const Program &program,
                                           const Component &component);

// Exact readout distribution including classical readout error.
std::vector<double> distribution(const Program &program);

// Shots sampled per component from stream (seed, component qubits) and
// combined shot by shot. Components with the same qubits and operations give
// identical samples in any program.
sim::Counts sample(const Program &program, std::int64_t shots,
                   std::uint64_t seed);

} // namespace xtalk::backend
