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

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "xtalk/circuit/circuit.hpp"
#include "xtalk/device/calibration.hpp"
#include "xtalk/device/topology.hpp"

namespace xtalk::circuit {

// Rewrites every CX whose orientation opposes the calibrated drive->target
// direction as H(d) H(t) CX(d, t) H(d) H(t). Throws InputError for a CX on
// an uncoupled pair.
Circuit map_to_native(const Circuit &circuit,
                      const device::DeviceSnapshot &snapshot);

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 }; // bits (x, z)

char pauli_char(Pauli p);

using PauliPair = std::pair<Pauli, Pauli>; // (control, target)

// The pair S with CX (P_c x P_t) = S CX up to a phase.
PauliPair propagate_through_cx(PauliPair prefix);

struct SpectatorTwirl {
  QubitId qubit = 0;
  Pauli pauli = Pauli::I;
};

struct TwirlInsertion {
  std::size_t instruction = 0; // index of the CX in the input circuit
  QubitId control = 0;
  QubitId target = 0;
  PauliPair prefix{Pauli::I, Pauli::I};
  PauliPair suffix{Pauli::I, Pauli::I};
  std::vector<SpectatorTwirl> spectators;
};

struct TwirlRecord {
  std::uint64_t seed = 0;
  std::vector<TwirlInsertion> insertions;
};

// Pauli twirl of every native CX: a uniformly random pair before, its
// propagated image after, and for each active spectator of a triplet on that
// pair a random Pauli immediately before and after. Inserted Paulis are frame
// gates. The CX with ordinal k draws from sub-stream (seed, k).
std::pair<Circuit, TwirlRecord>
randomized_compile(const Circuit &circuit,
                   const device::DeviceSnapshot &snapshot,
                   std::span<const device::Triplet> triplets,
                   std::uint64_t seed);

nlohmann::json to_json(const TwirlRecord &record);

} // namespace xtalk::circuit
