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

#include "xtalk/simulator/tableau.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "xtalk/common/error.hpp"
#include "xtalk/simulator/gates.hpp"

namespace xtalk::sim {

namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

int count_y(const PauliString &p) {
  int y = 0;
  for (std::size_t j = 0; j < p.x.size(); ++j)
    y += p.x[j] & p.z[j];
  return y;
}

// Embeds a local gate into an n-qubit unitary, local bit j -> qubits[j].
Matrix embed(const Matrix &local, std::span<const QubitId> qubits, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  const auto ld = local.rows();
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index lc = 0, rest = col;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      lc |= ((col >> qubits[j]) & 1) << j;
      rest &= ~(Eigen::Index{1} << qubits[j]);
    }
    for (Eigen::Index lr = 0; lr < ld; ++lr) {
      Eigen::Index row = rest;
      for (std::size_t j = 0; j < qubits.size(); ++j)
        row |= ((lr >> j) & 1) << qubits[j];
      out(row, col) = local(lr, lc);
    }
  }
  return out;
}

PauliString generator(int n, int j, bool is_x) {
  PauliString p = PauliString::identity(n);
  (is_x ? p.x : p.z)[j] = 1;
  return p;
}

// Hermitian Pauli with the given bits.
PauliString hermitian(std::vector<std::uint8_t> x, std::vector<std::uint8_t> z) {
  PauliString p{std::move(x), std::move(z), 0};
  p.phase = mod4(count_y(p));
  return p;
}

} // namespace

PauliString PauliString::identity(int n) {
  return {std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0), 0};
}

PauliString PauliString::from_label(std::string_view label) {
  int sign = 0;
  if (!label.empty() && (label[0] == '+' || label[0] == '-')) {
    sign = label[0] == '-' ? 2 : 0;
    label.remove_prefix(1);
  }
  PauliString p = identity(static_cast<int>(label.size()));
  for (std::size_t j = 0; j < label.size(); ++j) {
    switch (label[j]) {
    case 'I':
      break;
    case 'X':
      p.x[j] = 1;
      break;
    case 'Z':
      p.z[j] = 1;
      break;
    case 'Y':
      p.x[j] = p.z[j] = 1;
      break;
    default:
      throw InputError("invalid Pauli label character");
    }
  }
  p.phase = mod4(count_y(p) + sign);
  return p;
}

std::string PauliString::label() const {
  const int sign = mod4(phase - count_y(*this));
  if (sign % 2 != 0)
    throw InputError("Pauli string is not Hermitian");
  std::string s(1, sign == 0 ? '+' : '-');
  for (std::size_t j = 0; j < x.size(); ++j)
    s += "IXZY"[x[j] | (z[j] << 1)];
  return s;
}

Matrix PauliString::to_matrix() const {
  Matrix x1(2, 2), z1(2, 2), id = Matrix::Identity(2, 2);
  x1 << 0, 1, 1, 0;
  z1 << 1, 0, 0, -1;
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Matrix f = (x[j] ? x1 : id) * (z[j] ? z1 : id);
    out = Eigen::kroneckerProduct(f, out).eval();
  }
  return std::pow(cplx(0.0, 1.0), phase) * out;
}

PauliString operator*(const PauliString &a, const PauliString &b) {
  PauliString out = a;
  int phase = a.phase + b.phase;
  for (std::size_t j = 0; j < a.x.size(); ++j) {
    phase += 2 * (a.z[j] & b.x[j]);
    out.x[j] ^= b.x[j];
    out.z[j] ^= b.z[j];
  }
  out.phase = mod4(phase);
  return out;
}

CliffordTableau CliffordTableau::identity(int n) {
  CliffordTableau t;
  for (int j = 0; j < n; ++j) {
    t.x_images_.push_back(generator(n, j, true));
    t.z_images_.push_back(generator(n, j, false));
  }
  return t;
}

CliffordTableau CliffordTableau::from_unitary(const Matrix &u) {
  int n = 0;
  while ((Eigen::Index{1} << n) < u.rows())
    ++n;
  const double d = static_cast<double>(u.rows());
  const int n_paulis = 1 << (2 * n);
  auto image = [&](const PauliString &p) {
    const Matrix m = u * p.to_matrix() * u.adjoint();
    for (int k = 0; k < n_paulis; ++k) {
      PauliString q = PauliString::identity(n);
      for (int j = 0; j < n; ++j) {
        q.x[j] = (k >> (2 * j)) & 1;
        q.z[j] = (k >> (2 * j + 1)) & 1;
      }
      const cplx c = (q.to_matrix().adjoint() * m).trace() / d;
      if (std::abs(std::abs(c) - 1.0) < 1e-9) {
        const double quarter = std::arg(c) / (std::numbers::pi / 2.0);
        const double rounded = std::round(quarter);
        if (std::abs(quarter - rounded) > 1e-9)
          break;
        q.phase = mod4(static_cast<int>(rounded));
        return q;
      }
    }
    throw NumericalError("unitary is not a Clifford operation");
  };
  CliffordTableau t;
  for (int j = 0; j < n; ++j) {
    t.x_images_.push_back(image(generator(n, j, true)));
    t.z_images_.push_back(image(generator(n, j, false)));
  }
  return t;
}

CliffordTableau CliffordTableau::from_gate(const circuit::Gate &gate, int n) {
  return from_unitary(embed(gate_matrix(gate), gate.qubits, n));
}

PauliString CliffordTableau::conjugate(const PauliString &p) const {
  PauliString out = PauliString::identity(num_qubits());
  out.phase = p.phase;
  for (int j = 0; j < num_qubits(); ++j) {
    if (p.x[j])
      out = out * x_images_[j];
    if (p.z[j])
      out = out * z_images_[j];
  }
  return out;
}

CliffordTableau CliffordTableau::then(const CliffordTableau &next) const {
  CliffordTableau t;
  for (int j = 0; j < num_qubits(); ++j) {
    t.x_images_.push_back(next.conjugate(x_images_[j]));
    t.z_images_.push_back(next.conjugate(z_images_[j]));
  }
  return t;
}

CliffordTableau CliffordTableau::inverse() const {
  // For symplectic M, M^-1 = Omega M^T Omega: the preimage of X_j has, on
  // qubit k, x-bit = z-bit of image(Z_k) at j and z-bit = z-bit of
  // image(X_k) at j; for Z_j the x-parts are used.
  const int n = num_qubits();
  CliffordTableau t;
  for (int j = 0; j < n; ++j) {
    std::vector<std::uint8_t> xx(n), xz(n), zx(n), zz(n);
    for (int k = 0; k < n; ++k) {
      xx[k] = z_images_[k].z[j];
      xz[k] = x_images_[k].z[j];
      zx[k] = z_images_[k].x[j];
      zz[k] = x_images_[k].x[j];
    }
    for (int which = 0; which < 2; ++which) {
      PauliString pre =
          which == 0 ? hermitian(xx, xz) : hermitian(zx, zz);
      const PauliString target = generator(n, j, which == 0);
      const PauliString img = conjugate(pre);
      if (img.x != target.x || img.z != target.z)
        throw NumericalError("tableau is not invertible");
      pre.phase = mod4(pre.phase - img.phase);
      (which == 0 ? t.x_images_ : t.z_images_).push_back(pre);
    }
  }
  return t;
}

bool CliffordTableau::is_identity() const {
  return *this == identity(num_qubits());
}

bool CliffordTableau::is_symplectic() const {
  // Images must satisfy the Pauli commutation relations of the generators.
  const int n = num_qubits();
  auto commute = [](const PauliString &a, const PauliString &b) {
    int s = 0;
    for (std::size_t j = 0; j < a.x.size(); ++j)
      s += (a.x[j] & b.z[j]) ^ (a.z[j] & b.x[j]);
    return s % 2 == 0;
  };
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      const auto &pa = a < n ? x_images_[a] : z_images_[a - n];
      const auto &pb = b < n ? x_images_[b] : z_images_[b - n];
      const bool expected = (a % n != b % n) || (a < n) == (b < n);
      if (commute(pa, pb) != expected)
        return false;
    }
  return true;
}

std::uint64_t CliffordTableau::key() const {
  std::uint64_t k = 0;
  auto push = [&k](const PauliString &p) {
    for (std::size_t j = 0; j < p.x.size(); ++j)
      k = (k << 2) | p.x[j] | (p.z[j] << 1);
    k = (k << 2) | static_cast<std::uint64_t>(p.phase);
  };
  for (const auto &p : x_images_)
    push(p);
  for (const auto &p : z_images_)
    push(p);
  return k;
}

CliffordTableau clifford_inverse(std::span<const CliffordTableau> sequence) {
  if (sequence.empty())
    throw InputError("clifford_inverse: empty sequence");
  CliffordTableau product = sequence.front();
  for (std::size_t i = 1; i < sequence.size(); ++i)
    product = product.then(sequence[i]);
  return product.inverse();
}

} // namespace xtalk::sim
