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

#include "xtalk/common/types.hpp"

// Dense kernels acting on a k-qubit subset of an n-qubit register. Bit j of a
// local index selects qubits[j]; bit q of a global index is qubit q.
//
// A density matrix is stored row-major, rho[r * 2^n + c]. A superoperator on
// k qubits is the 4^k x 4^k matrix S with vec(B') = S vec(B), where B is the
// 2^k x 2^k block of rho addressed by one (row, column) assignment of the
// other qubits and vec is row-major: S = sum_k kron(E_k, conj(E_k)).
//
// `serial` is the reference implementation; `omp` parallelizes the outer loop
// and must agree with it to rounding. The unqualified entry points pick one by
// register size.
namespace xtalk::sim::kernels {

namespace serial {
void apply_superop(std::span<cplx> rho, int n, std::span<const int> qubits,
                   const Matrix &superop);
void apply_depolarizing(std::span<cplx> rho, int n,
                        std::span<const int> qubits, double lambda);
void apply_unitary(std::span<cplx> psi, int n, std::span<const int> qubits,
                   const Matrix &u);
} // namespace serial

namespace omp {
void apply_superop(std::span<cplx> rho, int n, std::span<const int> qubits,
                   const Matrix &superop);
void apply_depolarizing(std::span<cplx> rho, int n,
                        std::span<const int> qubits, double lambda);
void apply_unitary(std::span<cplx> psi, int n, std::span<const int> qubits,
                   const Matrix &u);
} // namespace omp

// Registers at least this large use the OpenMP kernels.
inline constexpr int kParallelMinQubits = 6;

void apply_superop(std::span<cplx> rho, int n, std::span<const int> qubits,
                   const Matrix &superop);
void apply_depolarizing(std::span<cplx> rho, int n,
                        std::span<const int> qubits, double lambda);
void apply_unitary(std::span<cplx> psi, int n, std::span<const int> qubits,
                   const Matrix &u);

Matrix superop_from_kraus(std::span<const Matrix> kraus);
Matrix superop_from_unitary(const Matrix &u);

} // namespace xtalk::sim::kernels
