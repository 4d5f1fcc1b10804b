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

#include "xtalk/noise/channels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "xtalk/common/error.hpp"

namespace xtalk::noise {

namespace {

Matrix pauli_1q(int index) {
  const cplx i{0.0, 1.0};
  Matrix m(2, 2);
  switch (index) {
  case 0:
    m << 1, 0, 0, 1;
    break;
  case 1:
    m << 0, 1, 1, 0;
    break;
  case 2:
    m << 0, -i, i, 0;
    break;
  default:
    m << 1, 0, 0, -1;
    break;
  }
  return m;
}

// Pauli with digit j (base 4) acting on local qubit j.
Matrix pauli_string(int index, int arity) {
  Matrix out = Matrix::Identity(1, 1);
  for (int j = 0; j < arity; ++j) {
    const int digit = (index >> (2 * j)) & 3;
    out = Eigen::kroneckerProduct(pauli_1q(digit), out).eval();
  }
  return out;
}

void require(bool ok, const std::string &what) {
  if (!ok)
    throw InputError(what);
}

} // namespace

double KrausChannel::cptp_deviation() const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (const auto &e : operators)
    sum += e.adjoint() * e;
  return (sum - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Matrix KrausChannel::superoperator() const {
  const int d = dim();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const auto &e : operators)
    s += Eigen::kroneckerProduct(e, e.conjugate()).eval();
  return s;
}

double KrausChannel::process_fidelity() const {
  double sum = 0.0;
  for (const auto &e : operators)
    sum += std::norm(e.trace());
  const double d = dim();
  return sum / (d * d);
}

double KrausChannel::average_fidelity() const {
  return process_fidelity_to_average(process_fidelity(), dim());
}

double process_fidelity_to_average(double f_pro, int dim) {
  return (dim * f_pro + 1.0) / (dim + 1.0);
}

KrausChannel identity_channel(int arity) {
  const int d = 1 << arity;
  return {arity, {Matrix::Identity(d, d)}, 0.0};
}

ThermalRelaxationParams thermal_parameters(double t1_us, double t2_us,
                                           double duration_ns) {
  require(t1_us > 0.0, "thermal relaxation: t1 must be positive");
  require(t2_us > 0.0, "thermal relaxation: t2 must be positive");
  require(t2_us <= 2.0 * t1_us, "thermal relaxation: t2 exceeds 2 t1");
  require(duration_ns >= 0.0 && !std::isnan(duration_ns),
          "thermal relaxation: negative duration");
  const double t_us = duration_ns * 1e-3;
  ThermalRelaxationParams p;
  const double keep_1 = duration_ns == 0.0 ? 1.0 : std::exp(-t_us / t1_us);
  const double coherence2 =
      duration_ns == 0.0 ? 1.0 : std::exp(-2.0 * t_us / t2_us);
  p.p_ad = 1.0 - keep_1;
  p.gamma = p.p_ad;
  p.lambda = std::max(0.0, keep_1 - coherence2);
  p.p_pd = keep_1 > 0.0 ? p.lambda / keep_1 : 0.0;
  return p;
}

KrausChannel thermal_relaxation(double t1_us, double t2_us,
                                double duration_ns) {
  const auto p = thermal_parameters(t1_us, t2_us, duration_ns);
  const double coherence = std::sqrt(std::max(0.0, 1.0 - p.gamma - p.lambda));
  KrausChannel ch{1, {}, std::nullopt};
  Matrix k0 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = coherence;
  ch.operators.push_back(k0);
  if (p.gamma > 0.0) {
    Matrix k1 = Matrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(p.gamma);
    ch.operators.push_back(k1);
  }
  if (p.lambda > 0.0) {
    Matrix k2 = Matrix::Zero(2, 2);
    k2(1, 1) = std::sqrt(p.lambda);
    ch.operators.push_back(k2);
  }
  if (ch.operators.size() == 1)
    ch.depolarizing_weight = 0.0;
  return ch;
}

KrausChannel depolarizing(int arity, double p) {
  require(arity >= 1, "depolarizing: arity must be positive");
  const int n_paulis = 1 << (2 * arity);
  require(p >= 0.0 && p * n_paulis <= 1.0 + kAlgebraTol,
          "depolarizing: p outside [0, 4^-arity]");
  KrausChannel ch{arity, {}, p * n_paulis};
  const double p_identity = std::max(0.0, 1.0 - (n_paulis - 1) * p);
  const int d = 1 << arity;
  if (p_identity > 0.0)
    ch.operators.push_back(std::sqrt(p_identity) * Matrix::Identity(d, d));
  if (p > 0.0)
    for (int k = 1; k < n_paulis; ++k)
      ch.operators.push_back(std::sqrt(p) * pauli_string(k, arity));
  return ch;
}

KrausChannel depolarizing_weight(int arity, double lambda) {
  return depolarizing(arity, lambda / static_cast<double>(1 << (2 * arity)));
}

DepolarizingParams rate_to_depol(double r, int arity) {
  const double d = 1 << arity;
  require(r >= 0.0 && r <= (d - 1.0) / d + kAlgebraTol,
          "rate_to_depol: rate outside [0, (d-1)/d]");
  DepolarizingParams out;
  out.arity = arity;
  out.lambda_total = r * d / (d - 1.0);
  out.p = out.lambda_total / (d * d);
  return out;
}

double depol_to_rate(const DepolarizingParams &params) {
  const double d = 1 << params.arity;
  return params.lambda_total * (d - 1.0) / d;
}

KrausChannel compose(const KrausChannel &first, const KrausChannel &second) {
  if (first.arity != second.arity)
    throw InputError("compose: arity mismatch");
  KrausChannel out{first.arity, {}, std::nullopt};
  for (const auto &b : second.operators)
    for (const auto &a : first.operators) {
      Matrix ba = b * a;
      if (ba.cwiseAbs().maxCoeff() > 0.0)
        out.operators.push_back(std::move(ba));
    }
  if (first.depolarizing_weight && second.depolarizing_weight)
    out.depolarizing_weight =
        1.0 - (1.0 - *first.depolarizing_weight) *
                  (1.0 - *second.depolarizing_weight);
  return out;
}

KrausChannel tensor(const KrausChannel &low, const KrausChannel &high) {
  KrausChannel out{low.arity + high.arity, {}, std::nullopt};
  for (const auto &h : high.operators)
    for (const auto &l : low.operators)
      out.operators.push_back(Eigen::kroneckerProduct(h, l).eval());
  if (low.depolarizing_weight == 0.0 && high.depolarizing_weight == 0.0)
    out.depolarizing_weight = 0.0;
  return out;
}

nlohmann::json describe(const KrausChannel &channel) {
  nlohmann::json j{{"arity", channel.arity},
                   {"kraus_operators", channel.operators.size()},
                   {"average_error", channel.average_error()}};
  if (channel.depolarizing_weight)
    j["depolarizing_weight"] = *channel.depolarizing_weight;
  return j;
}

} // namespace xtalk::noise
