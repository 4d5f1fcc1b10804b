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

#include <span>
#include <vector>

#include "xtalk/circuit/circuit.hpp"
#include "xtalk/device/calibration.hpp"

namespace xtalk::bench {

// H(q_i) CX(q_i, q_{i+1}) for i = 0..n-2, then H(q_{n-1}), then MEASURE of
// every qubit in index order. Throws InputError for n < 1.
circuit::Circuit hadamard_ladder(int n);

// Template on k logical qubits placed on a k-qubit chain of the device:
// logical i runs on layout[i]. Throws InputError when the layout is not a
// simple path of the coupling graph of the template's size, or when a CX of
// the template does not act on consecutive logical indices.
circuit::Circuit place_on_layout(const circuit::Circuit &templ,
                                 std::span<const QubitId> layout,
                                 const device::DeviceSnapshot &snapshot);

} // namespace xtalk::bench
