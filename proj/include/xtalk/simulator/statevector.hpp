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

#include <vector>

#include "xtalk/circuit/circuit.hpp"
#include "xtalk/common/types.hpp"

namespace xtalk::sim {

inline constexpr int kMaxExactQubits = 14;

// Noiseless final state of every unitary instruction; BARRIER, DELAY and
// MEASURE are skipped. Throws InputError above kMaxExactQubits.
std::vector<cplx> evolve_statevector(const circuit::Circuit &circuit);

// Outcome probabilities of the circuit's readout (bit k of an outcome index
// is the k-th measured qubit, see Circuit::readout_order).
std::vector<double> exact_distribution(const circuit::Circuit &circuit);

// Marginal of a full-register distribution onto `bits` (bit k of the result
// is qubit bits[k]).
std::vector<double> marginalize(const std::vector<double> &probs,
                                const std::vector<QubitId> &bits);

} // namespace xtalk::sim
