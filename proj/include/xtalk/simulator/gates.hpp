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

#include "xtalk/circuit/circuit.hpp"
#include "xtalk/common/types.hpp"

namespace xtalk::sim {

// Unitary of a gate in local ordering: bit j of a row/column index is
// gate.qubits[j]. For CX, bit 0 is the control. Throws InputError for
// non-unitary kinds.
Matrix gate_matrix(const circuit::Gate &gate);
Matrix gate_matrix(circuit::GateKind kind, double theta_rad = 0.0);

} // namespace xtalk::sim
