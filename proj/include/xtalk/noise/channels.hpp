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

#include <optional>
#include <vector>

#include "json.hpp"
#include "xtalk/common/types.hpp"

namespace xtalk::noise {

// Completely positive map rho -> sum_k E_k rho E_k^dagger on `arity` qubits.
// Operators use local ordering: bit j of an index is the j-th target qubit.
struct KrausChannel {
  int arity = 1;
  std::vector<Matrix> operators;
  // Set when the channel equals rho -> (1 - w) rho + w Tr_S(rho) x I/d on its
  // qubits; simulators use it as a fast path.
  std::optional<double> depolarizing_weight;

  int dim() const { return 1 << arity; }
  // max |sum_k E_k^dagger E_k - I|.
  double cptp_deviation() const;
  bool is_cptp(double tol = kAlgebraTol) const {
    return cptp_deviation() <= tol;
  }
  // 4^arity x 4^arity matrix S with vec(E(B)) = S vec(B), vec row-major.
  Matrix superoperator() const;
  // Entanglement fidelity sum_k |Tr E_k|^2 / d^2.
  double process_fidelity() const;
  double average_fidelity() const;
  double average_error() const { return 1.0 - average_fidelity(); }
};

KrausChannel identity_channel(int arity);

// Thermal relaxation for a gate or idle interval of `duration_ns`. Times in
// microseconds; infinite T1/T2 are allowed. Throws InputError unless
// t1 > 0, 0 < t2 <= 2 t1, duration >= 0.
KrausChannel thermal_relaxation(double t1_us, double t2_us, double duration_ns);

struct ThermalRelaxationParams {
  double p_ad = 0.0;
  double p_pd = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
};
ThermalRelaxationParams thermal_parameters(double t1_us, double t2_us,
                                           double duration_ns);

// Pauli channel with probability p for every non-identity Pauli on `arity`
// qubits. Throws InputError unless 0 <= p and p * 4^arity <= 1.
KrausChannel depolarizing(int arity, double p);

struct DepolarizingParams {
  int arity = 1;
  double p = 0.0;
  double lambda_total = 0.0; // p * 4^arity
};

// Average error r -> depolarizing weight r d / (d - 1). Throws InputError
// unless 0 <= r <= (d - 1) / d.
DepolarizingParams rate_to_depol(double r, int arity);
double depol_to_rate(const DepolarizingParams &params);
// Depolarizing channel of total weight `lambda` (p = lambda / 4^arity).
KrausChannel depolarizing_weight(int arity, double lambda);

// `second` applied after `first`; both on the same qubits.
KrausChannel compose(const KrausChannel &first, const KrausChannel &second);
// `low` acts on local bits [0, low.arity), `high` on the bits above.
KrausChannel tensor(const KrausChannel &low, const KrausChannel &high);

double process_fidelity_to_average(double f_pro, int dim);

nlohmann::json describe(const KrausChannel &channel);

} // namespace xtalk::noise
