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

#include <gtest/gtest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "fixtures.hpp"
#include "xtalk/circuit/circuit.hpp"
#include "xtalk/common/error.hpp"
#include "xtalk/common/rng.hpp"
#include "xtalk/noise/channels.hpp"
#include "xtalk/simulator/density_matrix.hpp"
#include "xtalk/simulator/gates.hpp"
#include "xtalk/simulator/kernels.hpp"
#include "xtalk/simulator/sampling.hpp"
#include "xtalk/simulator/statevector.hpp"
#include "xtalk/simulator/tableau.hpp"

using namespace xtalk;
using namespace xtalk::sim;
using circuit::Circuit;
using circuit::Gate;
using circuit::GateKind;

namespace {

// Dense embedding of a local operator on `qubits` into n qubits, built one
// basis element at a time. Independent of the strided kernels.
Matrix embed(const Matrix &op, int n, const std::vector<int> &qubits) {
  const std::size_t d = std::size_t{1} << n;
  const int k = static_cast<int>(qubits.size());
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t col = 0; col < d; ++col)
    for (std::size_t row = 0; row < d; ++row) {
      bool rest_equal = true;
      for (int q = 0; q < n && rest_equal; ++q) {
        const bool in_op =
            std::find(qubits.begin(), qubits.end(), q) != qubits.end();
        if (!in_op && ((row >> q) & 1) != ((col >> q) & 1))
          rest_equal = false;
      }
      if (!rest_equal)
        continue;
      std::size_t lr = 0, lc = 0;
      for (int j = 0; j < k; ++j) {
        lr |= ((row >> qubits[j]) & 1) << j;
        lc |= ((col >> qubits[j]) & 1) << j;
      }
      out(row, col) = op(lr, lc);
    }
  return out;
}

DensityMatrix state_of(const Matrix &m) { return DensityMatrix::from_matrix(m); }

double max_diff(const Matrix &a, const Matrix &b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix random_unitary(int k, Rng &rng) {
  const Matrix h = fx::random_density(k, rng);
  Eigen::ComplexEigenSolver<Matrix> es(h + h.adjoint());
  const Matrix phases = (cplx(0, 3.0) * es.eigenvalues()).array().exp().matrix().asDiagonal();
  return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

} // namespace

TEST(DensityMatrix, GroundStateAndValidation) {
  DensityMatrix rho(2);
  EXPECT_EQ(rho.dim(), 4u);
  EXPECT_EQ(rho(0, 0), cplx(1.0));
  EXPECT_NO_THROW(rho.check_invariants());
  Matrix bad = Matrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix::from_matrix(bad), InputError);
  bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix::from_matrix(bad), InputError);
  EXPECT_THROW(DensityMatrix::from_matrix(Matrix::Identity(3, 3) / 3.0),
               InputError);
  EXPECT_THROW(DensityMatrix(-1), InputError);
}

TEST(DensityMatrix, BellState) {
  DensityMatrix rho(2);
  rho = apply_gate(rho, Gate::single(GateKind::H, 0));
  rho = apply_gate(rho, Gate::cx(0, 1));
  const auto p = rho.diagonal();
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[3], 0.5, 1e-12);
  EXPECT_NEAR(std::abs(rho(0, 3)), 0.5, 1e-12);
  EXPECT_THROW(apply_gate(rho, Gate::measure(0)), InputError);
}

TEST(DensityMatrix, GatesMatchDenseEmbedding) {
  Rng rng(11);
  const int n = 3;
  const Matrix rho0 = fx::random_density(n, rng);
  const std::vector<Gate> gates = {
      Gate::single(GateKind::H, 2), Gate::single(GateKind::SX, 1),
      Gate::rz(0, 0.7),             Gate::cx(2, 0),
      Gate::cx(0, 1),               Gate::single(GateKind::Y, 1)};
  for (const auto &g : gates) {
    const Matrix u = embed(gate_matrix(g), n, g.qubits);
    const Matrix want = u * rho0 * u.adjoint();
    const auto got = apply_gate(state_of(rho0), g);
    EXPECT_LT(max_diff(got.to_matrix(), want), 1e-12) << circuit::gate_name(g.kind);
  }
}

TEST(DensityMatrix, InvariantsHoldUnderRandomChannels) {
  Rng rng(3);
  const int n = 4;
  DensityMatrix rho = state_of(fx::random_density(n, rng));
  for (int step = 0; step < 40; ++step) {
    const int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n - 1));
    if (b >= a)
      ++b;
    const std::vector<int> qs = {a, b};
    switch (step % 3) {
    case 0:
      rho = apply_channel(rho, noise::depolarizing_weight(2, rng.uniform()), qs);
      break;
    case 1:
      rho = apply_channel(
          rho, noise::thermal_relaxation(80.0, 60.0, 300.0 * rng.uniform()),
          std::vector<int>{a});
      break;
    default:
      rho = apply_gate(rho, Gate::cx(a, b));
    }
    EXPECT_NEAR(rho.trace(), 1.0, kStateTol);
    EXPECT_LT(rho.hermiticity_error(), kStateTol);
    EXPECT_GT(rho.min_eigenvalue(), -kPsdSlack);
  }
  EXPECT_NO_THROW(rho.check_invariants());
}

TEST(DensityMatrix, ChannelArityChecked) {
  DensityMatrix rho(2);
  EXPECT_THROW(apply_channel(rho, noise::depolarizing(2, 0.1),
                             std::vector<int>{0}),
               InputError);
  EXPECT_THROW(apply_channel(rho, noise::depolarizing(1, 0.1),
                             std::vector<int>{2}),
               InputError);
}

TEST(Kernels, SerialParallelAndDenseAgree) {
  Rng rng(5);
  for (int n : {3, 6, 7}) {
    const Matrix rho0 = fx::random_density(n, rng);
    for (const std::vector<int> &qs :
         {std::vector<int>{1}, std::vector<int>{n - 1, 0},
          std::vector<int>{1, n - 1, 0}}) {
      const int k = static_cast<int>(qs.size());
      const Matrix u = random_unitary(k, rng);
      const Matrix s = kernels::superop_from_unitary(u);
      const Matrix full = embed(u, n, qs);
      const Matrix want = full * rho0 * full.adjoint();

      std::vector<cplx> a(rho0.size()), b(rho0.size());
      for (Eigen::Index r = 0; r < rho0.rows(); ++r)
        for (Eigen::Index c = 0; c < rho0.cols(); ++c)
          a[r * rho0.cols() + c] = b[r * rho0.cols() + c] = rho0(r, c);
      kernels::serial::apply_superop(a, n, qs, s);
      kernels::omp::apply_superop(b, n, qs, s);
      double worst = 0.0, split = 0.0;
      for (Eigen::Index r = 0; r < rho0.rows(); ++r)
        for (Eigen::Index c = 0; c < rho0.cols(); ++c) {
          worst = std::max(worst, std::abs(a[r * rho0.cols() + c] - want(r, c)));
          split = std::max(split, std::abs(a[r * rho0.cols() + c] -
                                           b[r * rho0.cols() + c]));
        }
      EXPECT_LT(worst, 1e-12) << "n=" << n << " k=" << k;
      EXPECT_LT(split, 1e-13);

      std::vector<cplx> c1(a), c2(a);
      kernels::serial::apply_depolarizing(c1, n, qs, 0.3);
      kernels::serial::apply_superop(
          c2, n, qs, noise::depolarizing_weight(k, 0.3).superoperator());
      std::vector<cplx> c3(a);
      kernels::omp::apply_depolarizing(c3, n, qs, 0.3);
      for (std::size_t i = 0; i < c1.size(); ++i) {
        ASSERT_LT(std::abs(c1[i] - c2[i]), 1e-12);
        ASSERT_LT(std::abs(c1[i] - c3[i]), 1e-13);
      }
    }
  }
}

TEST(Kernels, StatevectorSerialAndParallelAgree) {
  Rng rng(8);
  const int n = 8;
  std::vector<cplx> a(std::size_t{1} << n);
  for (auto &v : a)
    v = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  auto b = a;
  const Matrix u = random_unitary(2, rng);
  const std::vector<int> qs = {6, 1};
  kernels::serial::apply_unitary(a, n, qs, u);
  kernels::omp::apply_unitary(b, n, qs, u);
  for (std::size_t i = 0; i < a.size(); ++i)
    ASSERT_LT(std::abs(a[i] - b[i]), 1e-13);
}

TEST(Statevector, ExactDistributionFollowsReadoutOrder) {
  Circuit c(3);
  c.x(2).h(0).measure(2).measure(1);
  const auto p = exact_distribution(c);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_NEAR(p[1], 1.0, 1e-12); // bit 0 is qubit 2
  const auto full = exact_distribution(Circuit(3).x(2).h(0));
  const auto marg = marginalize(full, {0});
  EXPECT_NEAR(marg[0], 0.5, 1e-12);
  EXPECT_NEAR(marg[1], 0.5, 1e-12);
}

TEST(Statevector, AgreesWithDensityMatrix) {
  Circuit c(3);
  c.h(0).cx(0, 1).append(Gate::rz(1, 0.4)).h(1).cx(1, 2).append(
      Gate::single(GateKind::SX, 2));
  DensityMatrix rho(3);
  for (const auto &g : c.instructions())
    rho = apply_gate(rho, g);
  const auto p = exact_distribution(c);
  const auto d = rho.diagonal();
  for (std::size_t i = 0; i < p.size(); ++i)
    EXPECT_NEAR(p[i], d[i], 1e-12);
}

TEST(Tableau, DenseAndTableauAgree) {
  Rng rng(21);
  const std::vector<GateKind> singles = {GateKind::H, GateKind::S,
                                         GateKind::SDG, GateKind::SX,
                                         GateKind::X, GateKind::Z};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    Matrix u = Matrix::Identity(1 << n, 1 << n);
    auto tab = CliffordTableau::identity(n);
    for (int step = 0; step < 12; ++step) {
      Gate g;
      if (n > 1 && rng.below(3) == 0) {
        const int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n - 1));
        if (b >= a)
          ++b;
        g = Gate::cx(a, b);
      } else {
        g = Gate::single(singles[rng.below(singles.size())],
                         static_cast<int>(rng.below(n)));
      }
      u = embed(gate_matrix(g), n, g.qubits) * u;
      tab = tab.then(CliffordTableau::from_gate(g, n));
    }
    EXPECT_EQ(tab, CliffordTableau::from_unitary(u));
    EXPECT_TRUE(tab.is_symplectic());
    EXPECT_TRUE(tab.then(tab.inverse()).is_identity());
    for (int j = 0; j < n; ++j) {
      // U X_j U^dagger must equal the tableau image.
      auto xj = PauliString::identity(n);
      xj.x[j] = 1;
      const Matrix lhs = u * xj.to_matrix() * u.adjoint();
      EXPECT_LT(max_diff(lhs, tab.image_x(j).to_matrix()), 1e-12);
    }
  }
}

TEST(Tableau, NonCliffordRejected) {
  EXPECT_THROW(CliffordTableau::from_unitary(gate_matrix(GateKind::RZ, 0.3)),
               NumericalError);
}

TEST(Tableau, PauliAlgebra) {
  const auto x = PauliString::from_label("+X");
  const auto z = PauliString::from_label("+Z");
  const auto y = PauliString::from_label("+Y");
  EXPECT_LT(max_diff((x * z).to_matrix(), x.to_matrix() * z.to_matrix()),
            1e-12);
  EXPECT_LT(max_diff((z * y).to_matrix(), z.to_matrix() * y.to_matrix()),
            1e-12);
  EXPECT_EQ(PauliString::from_label("-IY").label(), "-IY");
}

TEST(Tableau, CliffordInverseUndoesSequence) {
  std::vector<CliffordTableau> seq = {
      CliffordTableau::from_gate(Gate::single(GateKind::H, 0), 2),
      CliffordTableau::from_gate(Gate::cx(0, 1), 2),
      CliffordTableau::from_gate(Gate::single(GateKind::S, 1), 2)};
  const auto inv = clifford_inverse(seq);
  auto total = CliffordTableau::identity(2);
  for (const auto &t : seq)
    total = total.then(t);
  EXPECT_TRUE(total.then(inv).is_identity());
  EXPECT_THROW(clifford_inverse(std::span<const CliffordTableau>{}),
               InputError);
}

TEST(Sampling, FrequencyWithinTolerance) {
  const std::vector<double> probs = {0.9, 0.1};
  const auto counts = sample_distribution(probs, 1, 100000, {}, 17);
  EXPECT_EQ(counts.total(), 100000);
  EXPECT_NEAR(counts.probability(1), 0.1, 0.01);
  EXPECT_EQ(counts, sample_distribution(probs, 1, 100000, {}, 17));
  EXPECT_NE(counts, sample_distribution(probs, 1, 100000, {}, 18));
}

TEST(Sampling, ReadoutErrorExact) {
  const std::vector<ReadoutError> ro = {{0.1, 0.2}};
  const auto p = apply_readout({1.0, 0.0}, ro);
  EXPECT_NEAR(p[1], 0.1, 1e-15);
  const auto q = apply_readout({0.0, 1.0}, ro);
  EXPECT_NEAR(q[0], 0.2, 1e-15);
}

TEST(Sampling, CountsJsonRoundTrip) {
  Counts c;
  c.num_bits = 3;
  c.shots = 5;
  c.counts = {{0b101, 3}, {0b010, 2}};
  const auto doc = to_json(c);
  EXPECT_EQ(doc["counts"]["101"], 3);
  EXPECT_EQ(counts_from_json(doc), c);
  EXPECT_EQ(bitstring(1, 3), "001");
  Counts d = c;
  d.merge(c);
  EXPECT_EQ(d.total(), 10);
}
