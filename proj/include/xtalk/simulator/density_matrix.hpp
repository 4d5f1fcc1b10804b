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
#include "xtalk/common/types.hpp"
#include "xtalk/noise/channels.hpp"

namespace xtalk::sim {

// Density matrix of n qubits, row-major; qubit 0 is the least-significant bit
// of a basis index.
class DensityMatrix {
public:
  // |0...0><0...0|.
  explicit DensityMatrix(int num_qubits);
  // Throws InputError unless `m` is a valid 2^n x 2^n density matrix.
  static DensityMatrix from_matrix(const Matrix &m);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim() + c];
  }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  Matrix to_matrix() const;
  std::vector<double> diagonal() const;
  double trace() const;

  // Worst violations of the state invariants.
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // Throws NumericalError when Hermiticity, unit trace or positivity fail.
  void check_invariants() const;

private:
  int n_;
  std::vector<cplx> data_;
};

// rho -> U rho U^dagger. Throws InputError for MEASURE, BARRIER and DELAY or
// out-of-range qubits.
DensityMatrix apply_gate(DensityMatrix state, const circuit::Gate &gate);

// rho -> sum_k E_k rho E_k^dagger on `qubits` (local bit j = qubits[j]).
// Throws InputError on an arity mismatch.
DensityMatrix apply_channel(DensityMatrix state,
                            const noise::KrausChannel &channel,
                            std::span<const QubitId> qubits);

} // namespace xtalk::sim
