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
#include <optional>
#include <unordered_map>
#include <vector>

#include "xtalk/circuit/circuit.hpp"
#include "xtalk/common/rng.hpp"
#include "xtalk/simulator/tableau.hpp"

namespace xtalk::rb {

// A Clifford with a decomposition into {H, S, SDG, X, Y, Z, SX, CX(0, 1)} on
// local qubits 0..n-1.
struct CliffordElement {
  sim::CliffordTableau tableau;
  std::vector<circuit::Gate> gates;
  int cx_count = 0;
  std::vector<int> physical_1q; // per local qubit
};

// The full n-qubit Clifford group (modulo global phase) for n in {1, 2},
// enumerated once by a cheapest-first search from the identity. Each element
// carries a decomposition minimizing CX count, then physical single-qubit
// gates, then virtual ones. CX is only used in the 0 -> 1 orientation.
class CliffordGroup {
public:
  // Shared instance; construction is thread-safe.
  static const CliffordGroup &get(int n);

  int num_qubits() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const CliffordElement &element(std::size_t index) const {
    return elements_[index];
  }
  std::optional<std::size_t> find(const sim::CliffordTableau &t) const;

  // Group averages over all elements.
  double mean_cx() const;
  double mean_physical_1q(int qubit) const;

  // Uniformly random element index.
  std::size_t sample(Rng &rng) const { return rng.below(elements_.size()); }

private:
  explicit CliffordGroup(int n);

  int n_;
  std::vector<CliffordElement> elements_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Uniformly random n-qubit Clifford drawn from `rng`.
const CliffordElement &sample_clifford(int n, Rng &rng);

} // namespace xtalk::rb
