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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xtalk/common/types.hpp"

namespace xtalk::circuit {

enum class GateKind { I, X, Y, Z, H, S, SDG, SX, RZ, CX, BARRIER, DELAY, MEASURE };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_name(std::string_view name);

// Number of qubits a kind acts on; 0 for BARRIER (any number >= 1).
int gate_arity(GateKind kind);
bool is_unitary(GateKind kind);

struct Gate {
  GateKind kind = GateKind::I;
  std::vector<QubitId> qubits; // CX: {control, target}
  double theta_rad = 0.0;      // RZ only
  double duration_ns = 0.0;    // DELAY only
  // Pauli inserted by randomized compiling. Frame gates take no time and carry
  // no noise: on hardware they are merged into adjacent single-qubit pulses.
  bool frame = false;

  static Gate single(GateKind kind, QubitId q) { return {kind, {q}}; }
  static Gate rz(QubitId q, double theta) { return {GateKind::RZ, {q}, theta}; }
  static Gate cx(QubitId control, QubitId target) {
    return {GateKind::CX, {control, target}};
  }
  static Gate barrier(std::vector<QubitId> qubits) {
    return {GateKind::BARRIER, std::move(qubits)};
  }
  static Gate delay(QubitId q, double ns) {
    return {GateKind::DELAY, {q}, 0.0, ns};
  }
  static Gate measure(QubitId q) { return {GateKind::MEASURE, {q}}; }

  bool operator==(const Gate &) const = default;
};

// Diagonal gates realized as software frame changes (RZ, Z, S, SDG) and twirl
// frame gates: zero duration, no error, and they do not make a qubit active.
bool is_virtual(const Gate &g);

class Circuit {
public:
  Circuit() = default;
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate> &instructions() const { return instructions_; }
  std::size_t size() const { return instructions_.size(); }

  // Throws InputError when arity, indices, theta, or measurement order are
  // invalid.
  Circuit &append(Gate g);

  Circuit &h(QubitId q) { return append(Gate::single(GateKind::H, q)); }
  Circuit &x(QubitId q) { return append(Gate::single(GateKind::X, q)); }
  Circuit &cx(QubitId c, QubitId t) { return append(Gate::cx(c, t)); }
  Circuit &barrier(std::vector<QubitId> qs) {
    return append(Gate::barrier(std::move(qs)));
  }
  Circuit &measure(QubitId q) { return append(Gate::measure(q)); }
  Circuit &measure_all();

  // Qubits in the order they are measured; bit k of an outcome is the k-th
  // measured qubit. Circuits without MEASURE read out every qubit in index
  // order.
  std::vector<QubitId> readout_order() const;
  bool is_measured(QubitId q) const;

  bool operator==(const Circuit &) const = default;

private:
  int num_qubits_ = 0;
  std::vector<Gate> instructions_;
  std::vector<char> measured_;
};

nlohmann::json gate_to_json(const Gate &g);
Gate gate_from_json(const nlohmann::json &obj, const std::string &field);
nlohmann::json to_json(const Circuit &c);
Circuit circuit_from_json(const nlohmann::json &doc);

} // namespace xtalk::circuit
