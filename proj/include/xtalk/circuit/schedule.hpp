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

#include <set>
#include <vector>

#include "xtalk/circuit/circuit.hpp"
#include "xtalk/device/calibration.hpp"

namespace xtalk::circuit {

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
  bool operator==(const TimeSpan &) const = default;
};

struct ScheduledItem {
  TimeSpan span;
  std::vector<QubitId> qubits;
  bool busy = false;         // occupies its qubits (pulse-carrying, > 0 ns)
  bool marks_active = false; // counts as "has undergone a gate"
  bool operator==(const ScheduledItem &) const = default;
};

// ASAP timing of a circuit. Items are parallel to the circuit's instructions.
// Measurements are aligned at `duration`, the end of the last operation; idle
// intervals are the gaps in [0, duration] between busy items of each qubit
// that the circuit touches (DELAY counts as idle).
struct Schedule {
  std::vector<ScheduledItem> items;
  std::vector<std::vector<TimeSpan>> idle; // per qubit, time-ordered
  double duration = 0.0;
  bool operator==(const Schedule &) const = default;
};

// Physical single-qubit gates take sq_duration, CX the duration of its edge
// (either orientation), DELAY its own; virtual gates, BARRIER and MEASURE take
// no time. Throws InputError for a CX on an uncoupled pair.
double gate_duration(const Gate &g, const device::DeviceSnapshot &snapshot);

Schedule schedule(const Circuit &circuit,
                  const device::DeviceSnapshot &snapshot);

// Qubits with a non-virtual, non-BARRIER, non-DELAY instruction that started
// before `at_ns` or ended by it.
std::set<QubitId> active_qubits(const Schedule &schedule, double at_ns);

} // namespace xtalk::circuit
