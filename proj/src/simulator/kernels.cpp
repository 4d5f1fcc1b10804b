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

#include "xtalk/simulator/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace xtalk::sim::kernels {

namespace {

// Global offsets of every local index, plus the sorted qubit positions used
// to enumerate the remaining bits.
struct Layout {
  std::vector<std::size_t> offsets;
  std::vector<int> sorted;
  std::size_t dim = 0;
  std::size_t local = 0;

  Layout(int n, std::span<const int> qubits)
      : sorted(qubits.begin(), qubits.end()), dim(std::size_t{1} << n),
        local(std::size_t{1} << qubits.size()) {
    std::sort(sorted.begin(), sorted.end());
    offsets.resize(local);
    for (std::size_t a = 0; a < local; ++a) {
      std::size_t off = 0;
      for (std::size_t j = 0; j < qubits.size(); ++j)
        if (a >> j & 1)
          off |= std::size_t{1} << qubits[j];
      offsets[a] = off;
    }
  }

  std::size_t num_bases() const { return dim / local; }

  // i-th global index whose selected bits are all zero.
  std::size_t base(std::size_t i) const {
    for (int q : sorted) {
      const std::size_t low = i & ((std::size_t{1} << q) - 1);
      i = ((i - low) << 1) | low;
    }
    return i;
  }
};

std::vector<cplx> row_major(const Matrix &m) {
  std::vector<cplx> out(static_cast<std::size_t>(m.rows() * m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  return out;
}

inline void superop_block(cplx *rho, const Layout &L, std::size_t rb,
                          std::size_t cb, const cplx *S, cplx *v, cplx *w) {
  const std::size_t D = L.local, DD = D * D;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      v[a * D + b] = rho[(rb | L.offsets[a]) * L.dim + (cb | L.offsets[b])];
  for (std::size_t r = 0; r < DD; ++r) {
    cplx acc = 0.0;
    const cplx *row = S + r * DD;
    for (std::size_t c = 0; c < DD; ++c)
      acc += row[c] * v[c];
    w[r] = acc;
  }
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      rho[(rb | L.offsets[a]) * L.dim + (cb | L.offsets[b])] = w[a * D + b];
}

inline void depolarize_block(cplx *rho, const Layout &L, std::size_t rb,
                             std::size_t cb, double lambda) {
  const std::size_t D = L.local;
  cplx trace = 0.0;
  for (std::size_t a = 0; a < D; ++a)
    trace += rho[(rb | L.offsets[a]) * L.dim + (cb | L.offsets[a])];
  const cplx mixed = lambda * trace / static_cast<double>(D);
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b) {
      cplx &x = rho[(rb | L.offsets[a]) * L.dim + (cb | L.offsets[b])];
      x *= (1.0 - lambda);
      if (a == b)
        x += mixed;
    }
}

inline void unitary_group(cplx *psi, const Layout &L, std::size_t base,
                          const cplx *U, cplx *v) {
  const std::size_t D = L.local;
  for (std::size_t a = 0; a < D; ++a)
    v[a] = psi[base | L.offsets[a]];
  for (std::size_t r = 0; r < D; ++r) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < D; ++c)
      acc += U[r * D + c] * v[c];
    psi[base | L.offsets[r]] = acc;
  }
}

} // namespace

namespace serial {

void apply_superop(std::span<cplx> rho, int n, std::span<const int> qubits,
                   const Matrix &superop) {
  const Layout L(n, qubits);
  assert(rho.size() == L.dim * L.dim);
  const auto S = row_major(superop);
  std::vector<cplx> v(L.local * L.local), w(L.local * L.local);
  const std::size_t nb = L.num_bases();
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t rb = L.base(i);
    for (std::size_t j = 0; j < nb; ++j)
      superop_block(rho.data(), L, rb, L.base(j), S.data(), v.data(), w.data());
  }
}

void apply_depolarizing(std::span<cplx> rho, int n,
                        std::span<const int> qubits, double lambda) {
  const Layout L(n, qubits);
  const std::size_t nb = L.num_bases();
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t rb = L.base(i);
    for (std::size_t j = 0; j < nb; ++j)
      depolarize_block(rho.data(), L, rb, L.base(j), lambda);
  }
}

void apply_unitary(std::span<cplx> psi, int n, std::span<const int> qubits,
                   const Matrix &u) {
  const Layout L(n, qubits);
  const auto U = row_major(u);
  std::vector<cplx> v(L.local);
  const std::size_t nb = L.num_bases();
  for (std::size_t i = 0; i < nb; ++i)
    unitary_group(psi.data(), L, L.base(i), U.data(), v.data());
}

} // namespace serial

namespace omp {

void apply_superop(std::span<cplx> rho, int n, std::span<const int> qubits,
                   const Matrix &superop) {
  const Layout L(n, qubits);
  assert(rho.size() == L.dim * L.dim);
  const auto S = row_major(superop);
  const auto nb = static_cast<std::int64_t>(L.num_bases());
#pragma omp parallel
  {
    std::vector<cplx> v(L.local * L.local), w(L.local * L.local);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < nb; ++i) {
      const std::size_t rb = L.base(static_cast<std::size_t>(i));
      for (std::int64_t j = 0; j < nb; ++j)
        superop_block(rho.data(), L, rb, L.base(static_cast<std::size_t>(j)),
                      S.data(), v.data(), w.data());
    }
  }
}

void apply_depolarizing(std::span<cplx> rho, int n,
                        std::span<const int> qubits, double lambda) {
  const Layout L(n, qubits);
  const auto nb = static_cast<std::int64_t>(L.num_bases());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < nb; ++i) {
    const std::size_t rb = L.base(static_cast<std::size_t>(i));
    for (std::int64_t j = 0; j < nb; ++j)
      depolarize_block(rho.data(), L, rb, L.base(static_cast<std::size_t>(j)),
                       lambda);
  }
}

void apply_unitary(std::span<cplx> psi, int n, std::span<const int> qubits,
                   const Matrix &u) {
  const Layout L(n, qubits);
  const auto U = row_major(u);
  const auto nb = static_cast<std::int64_t>(L.num_bases());
#pragma omp parallel
  {
    std::vector<cplx> v(L.local);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < nb; ++i)
      unitary_group(psi.data(), L, L.base(static_cast<std::size_t>(i)),
                    U.data(), v.data());
  }
}

} // namespace omp

void apply_superop(std::span<cplx> rho, int n, std::span<const int> qubits,
                   const Matrix &superop) {
  if (n >= kParallelMinQubits)
    omp::apply_superop(rho, n, qubits, superop);
  else
    serial::apply_superop(rho, n, qubits, superop);
}

void apply_depolarizing(std::span<cplx> rho, int n,
                        std::span<const int> qubits, double lambda) {
  if (n >= kParallelMinQubits)
    omp::apply_depolarizing(rho, n, qubits, lambda);
  else
    serial::apply_depolarizing(rho, n, qubits, lambda);
}

void apply_unitary(std::span<cplx> psi, int n, std::span<const int> qubits,
                   const Matrix &u) {
  // Statevectors are 2^n, not 4^n: parallelize only for larger registers.
  if (n >= 2 * kParallelMinQubits)
    omp::apply_unitary(psi, n, qubits, u);
  else
    serial::apply_unitary(psi, n, qubits, u);
}

Matrix superop_from_kraus(std::span<const Matrix> kraus) {
  assert(!kraus.empty());
  const auto D = kraus.front().rows();
  Matrix S = Matrix::Zero(D * D, D * D);
  for (const auto &E : kraus)
    S += Eigen::kroneckerProduct(E, E.conjugate()).eval();
  return S;
}

Matrix superop_from_unitary(const Matrix &u) {
  return Eigen::kroneckerProduct(u, u.conjugate()).eval();
}

} // namespace xtalk::sim::kernels
