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
#include <string>
#include <string_view>
#include <vector>

#include "xtalk/circuit/circuit.hpp"
#include "xtalk/common/types.hpp"

namespace xtalk::sim {

// i^phase * prod_j X_j^x[j] Z_j^z[j].
struct PauliString {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  int phase = 0; // mod 4

  static PauliString identity(int n);
  // Hermitian Pauli from a label such as "+XZ" or "-IY"; character j is
  // qubit j.
  static PauliString from_label(std::string_view label);
  int num_qubits() const { return static_cast<int>(x.size()); }
  std::string label() const; // Hermitian strings only
  Matrix to_matrix() const;  // local ordering, qubit j is bit j
  bool operator==(const PauliString &) const = default;
};

// this * other.
PauliString operator*(const PauliString &a, const PauliString &b);

// Clifford U stored through its conjugation action: images of X_j and Z_j
// under P -> U P U^dagger.
class CliffordTableau {
public:
  static CliffordTableau identity(int n);
  // Tableau of an n-qubit Clifford unitary. Throws NumericalError when `u` is
  // not Clifford.
  static CliffordTableau from_unitary(const Matrix &u);
  // Tableau of a unitary gate embedded in an n-qubit register.
  static CliffordTableau from_gate(const circuit::Gate &gate, int n);

  int num_qubits() const { return static_cast<int>(x_images_.size()); }
  const PauliString &image_x(int j) const { return x_images_[j]; }
  const PauliString &image_z(int j) const { return z_images_[j]; }

  PauliString conjugate(const PauliString &p) const;
  // Clifford performing `this` and then `next`.
  CliffordTableau then(const CliffordTableau &next) const;
  CliffordTableau inverse() const;
  bool is_identity() const;
  // The binary part preserves the symplectic form.
  bool is_symplectic() const;
  // Injective packing of images and signs; valid for n <= 3.
  std::uint64_t key() const;

  bool operator==(const CliffordTableau &) const = default;

private:
  std::vector<PauliString> x_images_;
  std::vector<PauliString> z_images_;
};

// C such that executing the sequence (first element first) and then C is the
// identity. Throws InputError for an empty sequence.
CliffordTableau clifford_inverse(std::span<const CliffordTableau> sequence);

} // namespace xtalk::sim
