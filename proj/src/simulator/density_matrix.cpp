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

#include "xtalk/simulator/density_matrix.hpp"

#include <cmath>
#include <string>

#include "xtalk/common/error.hpp"
#include "xtalk/simulator/gates.hpp"
#include "xtalk/simulator/kernels.hpp"

namespace xtalk::sim {

DensityMatrix::DensityMatrix(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 0 || num_qubits > 14)
    throw InputError("density matrix: qubit count outside [0, 14]");
  data_.assign(dim() * dim(), 0.0);
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix &m) {
  int n = 0;
  while ((Eigen::Index{1} << n) < m.rows())
    ++n;
  if (m.rows() != m.cols() || (Eigen::Index{1} << n) != m.rows())
    throw InputError("density matrix: dimension is not a power of two");
  DensityMatrix out(n);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out.data_[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  try {
    out.check_invariants();
  } catch (const NumericalError &e) {
    throw InputError(e.what());
  }
  return out;
}

Matrix DensityMatrix::to_matrix() const {
  const auto d = static_cast<Eigen::Index>(dim());
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = data_[static_cast<std::size_t>(r * d + c)];
  return m;
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    out[i] = data_[i * dim() + i].real();
  return out;
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    t += data_[i * dim() + i].real();
  return t;
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = r; c < dim(); ++c)
      worst = std::max(worst, std::abs(data_[r * dim() + c] -
                                        std::conj(data_[c * dim() + r])));
  return worst;
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix m = to_matrix();
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::check_invariants() const {
  if (hermiticity_error() > kStateTol)
    throw NumericalError("density matrix is not Hermitian");
  if (std::abs(trace() - 1.0) > kStateTol)
    throw NumericalError("density matrix trace is " + std::to_string(trace()));
  if (min_eigenvalue() < -kPsdSlack)
    throw NumericalError("density matrix is not positive semidefinite");
}

namespace {

void check_qubits(std::span<const QubitId> qubits, int n) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n)
      throw InputError("qubit " + std::to_string(qubits[i]) +
                       " outside the register");
    for (std::size_t j = 0; j < i; ++j)
      if (qubits[i] == qubits[j])
        throw InputError("repeated qubit " + std::to_string(qubits[i]));
  }
}

} // namespace

DensityMatrix apply_gate(DensityMatrix state, const circuit::Gate &gate) {
  if (!circuit::is_unitary(gate.kind))
    throw InputError("apply_gate: '" +
                     std::string(circuit::gate_name(gate.kind)) +
                     "' is not a unitary gate");
  check_qubits(gate.qubits, state.num_qubits());
  const Matrix u = gate_matrix(gate);
  kernels::apply_superop(state.data(), state.num_qubits(), gate.qubits,
                         kernels::superop_from_unitary(u));
  return state;
}

DensityMatrix apply_channel(DensityMatrix state,
                            const noise::KrausChannel &channel,
                            std::span<const QubitId> qubits) {
  if (static_cast<int>(qubits.size()) != channel.arity)
    throw InputError("apply_channel: channel arity " +
                     std::to_string(channel.arity) + " applied to " +
                     std::to_string(qubits.size()) + " qubits");
  check_qubits(qubits, state.num_qubits());
  if (channel.depolarizing_weight) {
    if (*channel.depolarizing_weight != 0.0)
      kernels::apply_depolarizing(state.data(), state.num_qubits(), qubits,
                                  *channel.depolarizing_weight);
    return state;
  }
  kernels::apply_superop(state.data(), state.num_qubits(), qubits,
                         channel.superoperator());
  return state;
}

} // namespace xtalk::sim
