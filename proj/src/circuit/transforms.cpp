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

#include "xtalk/circuit/transforms.hpp"

#include "xtalk/circuit/schedule.hpp"
#include "xtalk/common/error.hpp"
#include "xtalk/common/rng.hpp"

namespace xtalk::circuit {

Circuit map_to_native(const Circuit &circuit,
                      const device::DeviceSnapshot &snapshot) {
  Circuit out(circuit.num_qubits());
  for (const auto &g : circuit.instructions()) {
    if (g.kind != GateKind::CX) {
      out.append(g);
      continue;
    }
    const QubitId c = g.qubits[0], t = g.qubits[1];
    const auto *edge = snapshot.find_edge(c, t);
    if (!edge)
      throw InputError("CX(" + std::to_string(c) + ", " + std::to_string(t) +
                       ") acts on an uncoupled pair");
    if (edge->drive == c) {
      out.append(g);
      continue;
    }
    const QubitId d = edge->drive;
    const QubitId tt = edge->target;
    out.append(Gate::single(GateKind::H, d));
    out.append(Gate::single(GateKind::H, tt));
    out.append(Gate::cx(d, tt));
    out.append(Gate::single(GateKind::H, d));
    out.append(Gate::single(GateKind::H, tt));
  }
  return out;
}

char pauli_char(Pauli p) {
  switch (p) {
  case Pauli::I:
    return 'I';
  case Pauli::X:
    return 'X';
  case Pauli::Y:
    return 'Y';
  case Pauli::Z:
    return 'Z';
  }
  return '?';
}

namespace {
bool has_x(Pauli p) { return static_cast<int>(p) & 1; }
bool has_z(Pauli p) { return static_cast<int>(p) & 2; }
Pauli make_pauli(bool x, bool z) {
  return static_cast<Pauli>((x ? 1 : 0) | (z ? 2 : 0));
}

std::optional<GateKind> pauli_gate(Pauli p) {
  switch (p) {
  case Pauli::X:
    return GateKind::X;
  case Pauli::Y:
    return GateKind::Y;
  case Pauli::Z:
    return GateKind::Z;
  default:
    return std::nullopt;
  }
}

void append_frame(Circuit &c, Pauli p, QubitId q) {
  if (auto kind = pauli_gate(p)) {
    Gate g = Gate::single(*kind, q);
    g.frame = true;
    c.append(std::move(g));
  }
}
} // namespace

PauliPair propagate_through_cx(PauliPair prefix) {
  // X on the control spreads to the target; Z on the target spreads back.
  const bool xc = has_x(prefix.first), zc = has_z(prefix.first);
  const bool xt = has_x(prefix.second), zt = has_z(prefix.second);
  return {make_pauli(xc, zc != zt), make_pauli(xt != xc, zt)};
}

std::pair<Circuit, TwirlRecord>
randomized_compile(const Circuit &circuit,
                   const device::DeviceSnapshot &snapshot,
                   std::span<const device::Triplet> triplets,
                   std::uint64_t seed) {
  const Schedule timing = schedule(circuit, snapshot);
  TwirlRecord record;
  record.seed = seed;
  Circuit out(circuit.num_qubits());

  std::uint64_t cx_ordinal = 0;
  const auto &instr = circuit.instructions();
  for (std::size_t i = 0; i < instr.size(); ++i) {
    const auto &g = instr[i];
    if (g.kind != GateKind::CX) {
      out.append(g);
      continue;
    }
    Rng rng(Rng::derive(seed, {Rng::tag("twirl"), cx_ordinal++}));
    TwirlInsertion ins;
    ins.instruction = i;
    ins.control = g.qubits[0];
    ins.target = g.qubits[1];
    ins.prefix = {static_cast<Pauli>(rng.below(4)),
                  static_cast<Pauli>(rng.below(4))};
    ins.suffix = propagate_through_cx(ins.prefix);

    const auto active = active_qubits(timing, timing.items[i].span.start);
    for (const auto &t : triplets)
      if (t.drive == ins.control && t.target == ins.target &&
          active.count(t.spectator) && t.spectator < circuit.num_qubits() &&
          !out.is_measured(t.spectator))
        ins.spectators.push_back(
            {t.spectator, static_cast<Pauli>(rng.below(4))});

    for (const auto &s : ins.spectators)
      append_frame(out, s.pauli, s.qubit);
    append_frame(out, ins.prefix.first, ins.control);
    append_frame(out, ins.prefix.second, ins.target);
    out.append(g);
    append_frame(out, ins.suffix.first, ins.control);
    append_frame(out, ins.suffix.second, ins.target);
    for (const auto &s : ins.spectators)
      append_frame(out, s.pauli, s.qubit);
    record.insertions.push_back(std::move(ins));
  }
  return {std::move(out), std::move(record)};
}

nlohmann::json to_json(const TwirlRecord &record) {
  auto ins = nlohmann::json::array();
  auto pair = [](PauliPair p) {
    return std::string{pauli_char(p.first), pauli_char(p.second)};
  };
  for (const auto &i : record.insertions) {
    auto specs = nlohmann::json::array();
    for (const auto &s : i.spectators)
      specs.push_back({{"qubit", s.qubit}, {"pauli", std::string(1, pauli_char(s.pauli))}});
    ins.push_back({{"instruction", i.instruction},
                   {"cx", {i.control, i.target}},
                   {"prefix", pair(i.prefix)},
                   {"suffix", pair(i.suffix)},
                   {"spectators", std::move(specs)}});
  }
  return {{"seed", record.seed}, {"insertions", std::move(ins)}};
}

} // namespace xtalk::circuit
