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

#include "xtalk/bench/ladder.hpp"

#include <cstdlib>
#include <set>
#include <string>

#include "xtalk/common/error.hpp"

namespace xtalk::bench {

circuit::Circuit hadamard_ladder(int n) {
  if (n < 1)
    throw InputError("hadamard ladder needs at least one qubit");
  circuit::Circuit c(n);
  for (int i = 0; i + 1 < n; ++i) {
    c.h(i);
    c.cx(i, i + 1);
  }
  c.h(n - 1);
  c.measure_all();
  return c;
}

circuit::Circuit place_on_layout(const circuit::Circuit &templ,
                                 std::span<const QubitId> layout,
                                 const device::DeviceSnapshot &snapshot) {
  if (static_cast<int>(layout.size()) != templ.num_qubits())
    throw InputError("layout has " + std::to_string(layout.size()) +
                     " qubits, template needs " +
                     std::to_string(templ.num_qubits()));
  std::set<QubitId> seen;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i] < 0 || layout[i] >= snapshot.num_qubits())
      throw InputError("layout qubit " + std::to_string(layout[i]) +
                       " not on the device");
    if (!seen.insert(layout[i]).second)
      throw InputError("layout repeats qubit " + std::to_string(layout[i]));
    if (i > 0 && !snapshot.adjacent(layout[i - 1], layout[i]))
      throw InputError("layout is not a chain: " + std::to_string(layout[i - 1]) +
                       " and " + std::to_string(layout[i]) + " are not coupled");
  }
  circuit::Circuit out(snapshot.num_qubits());
  for (auto g : templ.instructions()) {
    if (g.kind == circuit::GateKind::CX &&
        std::abs(g.qubits[0] - g.qubits[1]) != 1)
      throw InputError("template CX on non-consecutive logical qubits");
    for (auto &q : g.qubits)
      q = layout[static_cast<std::size_t>(q)];
    out.append(std::move(g));
  }
  return out;
}

} // namespace xtalk::bench
