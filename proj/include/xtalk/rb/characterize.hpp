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

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "xtalk/backend/backend.hpp"
#include "xtalk/device/topology.hpp"
#include "xtalk/noise/crosstalk.hpp"
#include "xtalk/rb/fit.hpp"
#include "xtalk/rb/sequences.hpp"

namespace xtalk::rb {

// RB of one subsystem: survival points, decay fit, and the fitted error per
// Clifford converted to an error per native gate.
struct SubsystemResult {
  std::vector<QubitId> qubits;
  std::vector<RBPoint> points;
  DecayFit fit;
  double gate_error = 0.0; // per CX for pairs, per physical 1q gate otherwise
};

struct TripletResult {
  device::Triplet triplet;
  SubsystemResult pair;
  SubsystemResult spectator;
};

struct CharacterizationResult {
  RBConfig config;
  std::vector<TripletResult> triplets; // sorted by triplet
  noise::CrosstalkTable table;
  std::vector<std::string> warnings;
};

// Survival of the all-zeros outcome on `bits` of each circuit's counts,
// averaged over repetitions per length.
std::vector<RBPoint> survival_points(std::span<const RBCircuit> circuits,
                                     std::span<const sim::Counts> counts,
                                     std::span<const int> bits);

// Per-Clifford error r of a two-qubit fit to a CX error: process infidelity
// r (d+1)/d minus the single-qubit gates' share (calibrated sq_error of each
// qubit times the group's average physical gate count), divided by the
// average CX count, converted back to an average error. Clamped at 0.
double pair_gate_error(double r_clifford, double sq_error_drive,
                       double sq_error_target);
// Per-Clifford error of a one-qubit fit to a per-physical-gate error.
double single_gate_error(double r_clifford);

// Runs every RB circuit on `backend` and fits. Shots of circuit (m, r) are
// drawn with seed stream (config.seed, "rb-shots", m, r).
SubsystemResult run_isolated_rb(const backend::SimulatedBackend &backend,
                                std::span<const QubitId> targets,
                                const RBConfig &config);

// Simultaneous RB of every batch; triplets of one batch share circuits. The
// pair and spectator of a triplet are read from the same shots, marginalized.
CharacterizationResult characterize(const backend::SimulatedBackend &backend,
                                    std::span<const device::Batch> batches,
                                    const RBConfig &config);

// Isolated references for the same triplets: two-qubit RB of each distinct
// pair alone and single-qubit RB of each distinct spectator alone.
struct IsolatedRates {
  std::map<std::pair<QubitId, QubitId>, SubsystemResult> pairs;
  std::map<QubitId, SubsystemResult> qubits;
};
IsolatedRates characterize_isolated(const backend::SimulatedBackend &backend,
                                    std::span<const device::Triplet> triplets,
                                    const RBConfig &config);

nlohmann::json to_json(const SubsystemResult &s);
nlohmann::json to_json(const CharacterizationResult &result);
nlohmann::json to_json(const IsolatedRates &rates);

} // namespace xtalk::rb
