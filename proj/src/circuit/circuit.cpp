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

#include "xtalk/circuit/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "xtalk/common/error.hpp"

namespace xtalk::circuit {

namespace {
constexpr std::array<std::pair<GateKind, std::string_view>, 13> kNames{{
    {GateKind::I, "id"},
    {GateKind::X, "x"},
    {GateKind::Y, "y"},
    {GateKind::Z, "z"},
    {GateKind::H, "h"},
    {GateKind::S, "s"},
    {GateKind::SDG, "sdg"},
    {GateKind::SX, "sx"},
    {GateKind::RZ, "rz"},
    {GateKind::CX, "cx"},
    {GateKind::BARRIER, "barrier"},
    {GateKind::DELAY, "delay"},
    {GateKind::MEASURE, "measure"},
}};
} // namespace

std::string_view gate_name(GateKind kind) {
  for (auto [k, n] : kNames)
    if (k == kind)
      return n;
  return "?";
}

std::optional<GateKind> parse_gate_name(std::string_view name) {
  for (auto [k, n] : kNames)
    if (n == name)
      return k;
  if (name == "i")
    return GateKind::I;
  return std::nullopt;
}

int gate_arity(GateKind kind) {
  switch (kind) {
  case GateKind::CX:
    return 2;
  case GateKind::BARRIER:
    return 0;
  default:
    return 1;
  }
}

bool is_unitary(GateKind kind) {
  return kind != GateKind::BARRIER && kind != GateKind::DELAY &&
         kind != GateKind::MEASURE;
}

bool is_virtual(const Gate &g) {
  if (g.frame)
    return true;
  switch (g.kind) {
  case GateKind::RZ:
  case GateKind::Z:
  case GateKind::S:
  case GateKind::SDG:
    return true;
  default:
    return false;
  }
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0)
    throw InputError("negative qubit count");
  measured_.assign(num_qubits, 0);
}

Circuit &Circuit::append(Gate g) {
  const std::string what = "instruction " +
                           std::to_string(instructions_.size()) + " (" +
                           std::string(gate_name(g.kind)) + ")";
  const int arity = gate_arity(g.kind);
  if (arity == 0 ? g.qubits.empty()
                 : static_cast<int>(g.qubits.size()) != arity)
    throw InputError(what + ": wrong number of qubits");
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    QubitId q = g.qubits[i];
    if (q < 0 || q >= num_qubits_)
      throw InputError(what + ": qubit " + std::to_string(q) +
                       " out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (g.qubits[j] == q)
        throw InputError(what + ": repeated qubit " + std::to_string(q));
    if (measured_[q] && g.kind != GateKind::BARRIER)
      throw InputError(what + ": qubit " + std::to_string(q) +
                       " already measured");
  }
  if (g.kind == GateKind::RZ && !std::isfinite(g.theta_rad))
    throw InputError(what + ": theta is not finite");
  if (g.kind == GateKind::DELAY &&
      !(g.duration_ns >= 0.0 && std::isfinite(g.duration_ns)))
    throw InputError(what + ": delay must be finite and non-negative");
  if (g.kind == GateKind::MEASURE)
    measured_[g.qubits[0]] = 1;
  instructions_.push_back(std::move(g));
  return *this;
}

Circuit &Circuit::measure_all() {
  for (QubitId q = 0; q < num_qubits_; ++q)
    measure(q);
  return *this;
}

std::vector<QubitId> Circuit::readout_order() const {
  std::vector<QubitId> order;
  for (const auto &g : instructions_)
    if (g.kind == GateKind::MEASURE)
      order.push_back(g.qubits[0]);
  if (order.empty())
    for (QubitId q = 0; q < num_qubits_; ++q)
      order.push_back(q);
  return order;
}

bool Circuit::is_measured(QubitId q) const {
  return q >= 0 && q < num_qubits_ && measured_[q];
}

nlohmann::json gate_to_json(const Gate &g) {
  nlohmann::json j{{"gate", gate_name(g.kind)}, {"qubits", g.qubits}};
  if (g.kind == GateKind::RZ)
    j["theta_rad"] = g.theta_rad;
  if (g.kind == GateKind::DELAY)
    j["duration_ns"] = g.duration_ns;
  if (g.frame)
    j["frame"] = true;
  return j;
}

Gate gate_from_json(const nlohmann::json &obj, const std::string &field) {
  if (!obj.is_object() || !obj.contains("gate") || !obj["gate"].is_string())
    throw ParseError(field + ": expected {\"gate\", \"qubits\"}");
  auto kind = parse_gate_name(obj["gate"].get<std::string>());
  if (!kind)
    throw ParseError(field + ".gate: unknown gate '" +
                     obj["gate"].get<std::string>() + "'");
  Gate g{*kind, {}};
  if (!obj.contains("qubits") || !obj["qubits"].is_array())
    throw ParseError(field + ".qubits: expected an array");
  for (const auto &q : obj["qubits"]) {
    if (!q.is_number_integer())
      throw ParseError(field + ".qubits: expected integers");
    g.qubits.push_back(q.get<int>());
  }
  if (g.kind == GateKind::RZ) {
    if (!obj.contains("theta_rad") || !obj["theta_rad"].is_number())
      throw ParseError(field + ".theta_rad: required for rz");
    g.theta_rad = obj["theta_rad"].get<double>();
  }
  if (g.kind == GateKind::DELAY) {
    if (!obj.contains("duration_ns") || !obj["duration_ns"].is_number())
      throw ParseError(field + ".duration_ns: required for delay");
    g.duration_ns = obj["duration_ns"].get<double>();
  }
  g.frame = obj.value("frame", false);
  return g;
}

nlohmann::json to_json(const Circuit &c) {
  auto instr = nlohmann::json::array();
  for (const auto &g : c.instructions())
    instr.push_back(gate_to_json(g));
  return {{"num_qubits", c.num_qubits()}, {"instructions", std::move(instr)}};
}

Circuit circuit_from_json(const nlohmann::json &doc) {
  if (!doc.is_object() || !doc.contains("num_qubits") ||
      !doc["num_qubits"].is_number_integer())
    throw ParseError("circuit: expected {\"num_qubits\", \"instructions\"}");
  Circuit c(doc["num_qubits"].get<int>());
  if (!doc.contains("instructions") || !doc["instructions"].is_array())
    throw ParseError("circuit.instructions: expected an array");
  const auto &instr = doc["instructions"];
  for (std::size_t i = 0; i < instr.size(); ++i)
    c.append(gate_from_json(instr[i], "instructions[" + std::to_string(i) + "]"));
  return c;
}

} // namespace xtalk::circuit
