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

#include "xtalk/circuit/schedule.hpp"

#include <algorithm>

#include "xtalk/common/error.hpp"

namespace xtalk::circuit {

double gate_duration(const Gate &g, const device::DeviceSnapshot &snapshot) {
  switch (g.kind) {
  case GateKind::BARRIER:
  case GateKind::MEASURE:
    return 0.0;
  case GateKind::DELAY:
    return g.duration_ns;
  case GateKind::CX: {
    const auto *edge = snapshot.find_edge(g.qubits[0], g.qubits[1]);
    if (!edge)
      throw InputError("no calibrated coupling between qubits " +
                       std::to_string(g.qubits[0]) + " and " +
                       std::to_string(g.qubits[1]));
    return edge->cx_duration_ns;
  }
  default:
    if (is_virtual(g))
      return 0.0;
    return snapshot.qubit(g.qubits[0]).sq_duration_ns;
  }
}

Schedule schedule(const Circuit &circuit,
                  const device::DeviceSnapshot &snapshot) {
  const int n = circuit.num_qubits();
  if (n > snapshot.num_qubits())
    throw InputError("circuit uses " + std::to_string(n) +
                     " qubits but the device has " +
                     std::to_string(snapshot.num_qubits()));
  Schedule out;
  out.items.resize(circuit.size());
  std::vector<double> avail(n, 0.0);
  std::vector<char> touched(n, 0);

  const auto &instr = circuit.instructions();
  for (std::size_t i = 0; i < instr.size(); ++i) {
    const auto &g = instr[i];
    auto &item = out.items[i];
    item.qubits = g.qubits;
    if (g.kind == GateKind::MEASURE) {
      touched[g.qubits[0]] = 1;
      item.marks_active = true;
      continue; // placed once the final time is known
    }
    double start = 0.0;
    for (QubitId q : g.qubits)
      start = std::max(start, avail[q]);
    if (g.kind == GateKind::BARRIER) {
      for (QubitId q : g.qubits)
        avail[q] = start;
      item.span = {start, start};
      continue;
    }
    const double dur = gate_duration(g, snapshot);
    item.span = {start, start + dur};
    item.busy = g.kind != GateKind::DELAY && dur > 0.0;
    item.marks_active = g.kind != GateKind::DELAY && !is_virtual(g);
    for (QubitId q : g.qubits) {
      avail[q] = start + dur;
      touched[q] = 1;
    }
  }
  for (double t : avail)
    out.duration = std::max(out.duration, t);
  for (std::size_t i = 0; i < instr.size(); ++i)
    if (instr[i].kind == GateKind::MEASURE)
      out.items[i].span = {out.duration, out.duration};

  out.idle.assign(n, {});
  std::vector<double> cursor(n, 0.0);
  for (const auto &item : out.items) {
    if (!item.busy)
      continue;
    for (QubitId q : item.qubits) {
      if (item.span.start > cursor[q])
        out.idle[q].push_back({cursor[q], item.span.start});
      cursor[q] = item.span.end;
    }
  }
  for (QubitId q = 0; q < n; ++q)
    if (touched[q] && out.duration > cursor[q])
      out.idle[q].push_back({cursor[q], out.duration});
  return out;
}

std::set<QubitId> active_qubits(const Schedule &schedule, double at_ns) {
  std::set<QubitId> out;
  for (const auto &item : schedule.items)
    if (item.marks_active &&
        (item.span.end <= at_ns || item.span.start < at_ns))
      out.insert(item.qubits.begin(), item.qubits.end());
  return out;
}

} // namespace xtalk::circuit
