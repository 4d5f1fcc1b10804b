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

#include "xtalk/simulator/statevector.hpp"

#include <complex>
#include <string>

#include "xtalk/common/error.hpp"
#include "xtalk/simulator/gates.hpp"
#include "xtalk/simulator/kernels.hpp"

namespace xtalk::sim {

using circuit::GateKind;

std::vector<cplx> evolve_statevector(const circuit::Circuit &circuit) {
  const int n = circuit.num_qubits();
  if (n > kMaxExactQubits)
    throw InputError("exact simulation limited to " +
                     std::to_string(kMaxExactQubits) + " qubits, got " +
                     std::to_string(n));
  std::vector<cplx> psi(std::size_t{1} << n, 0.0);
  psi[0] = 1.0;
  for (const auto &g : circuit.instructions()) {
    if (!circuit::is_unitary(g.kind) || g.kind == GateKind::I)
      continue;
    kernels::apply_unitary(psi, n, g.qubits, gate_matrix(g));
  }
  return psi;
}

std::vector<double> marginalize(const std::vector<double> &probs,
                                const std::vector<QubitId> &bits) {
  std::vector<double> out(std::size_t{1} << bits.size(), 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::size_t k = 0;
    for (std::size_t b = 0; b < bits.size(); ++b)
      k |= ((i >> bits[b]) & 1) << b;
    out[k] += probs[i];
  }
  return out;
}

std::vector<double> exact_distribution(const circuit::Circuit &circuit) {
  const auto psi = evolve_statevector(circuit);
  std::vector<double> probs(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    probs[i] = std::norm(psi[i]);
  return marginalize(probs, circuit.readout_order());
}

} // namespace xtalk::sim
