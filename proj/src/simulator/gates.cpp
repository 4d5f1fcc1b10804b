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

#include "xtalk/simulator/gates.hpp"

#include <cmath>
#include <string>

#include "xtalk/common/error.hpp"

namespace xtalk::sim {

using circuit::GateKind;

Matrix gate_matrix(GateKind kind, double theta_rad) {
  const cplx i{0.0, 1.0};
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  switch (kind) {
  case GateKind::I:
    m << 1, 0, 0, 1;
    return m;
  case GateKind::X:
    m << 0, 1, 1, 0;
    return m;
  case GateKind::Y:
    m << 0, -i, i, 0;
    return m;
  case GateKind::Z:
    m << 1, 0, 0, -1;
    return m;
  case GateKind::H:
    m << s, s, s, -s;
    return m;
  case GateKind::S:
    m << 1, 0, 0, i;
    return m;
  case GateKind::SDG:
    m << 1, 0, 0, -i;
    return m;
  case GateKind::SX:
    m << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5);
    return m;
  case GateKind::RZ:
    m << std::exp(-0.5 * i * theta_rad), 0, 0, std::exp(0.5 * i * theta_rad);
    return m;
  case GateKind::CX: {
    Matrix cx = Matrix::Zero(4, 4);
    cx(0, 0) = 1;
    cx(2, 2) = 1;
    cx(3, 1) = 1;
    cx(1, 3) = 1;
    return cx;
  }
  default:
    throw InputError("gate '" + std::string(circuit::gate_name(kind)) +
                     "' has no unitary");
  }
}

Matrix gate_matrix(const circuit::Gate &gate) {
  return gate_matrix(gate.kind, gate.theta_rad);
}

} // namespace xtalk::sim
