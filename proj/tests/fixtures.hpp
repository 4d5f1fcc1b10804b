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

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "xtalk/common/rng.hpp"
#include "xtalk/common/types.hpp"
#include "xtalk/device/calibration.hpp"
#include "xtalk/device/topology.hpp"

namespace xtalk::fx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::string data_path(const std::string &name) {
  return std::string(XTALK_DATA_DIR) + "/" + name;
}

inline device::DeviceSnapshot ehningen() {
  return device::load_snapshot_file(data_path("ehningen_topology.json"));
}

inline std::vector<device::Batch> published_batches() {
  return device::load_batches_file(data_path("ehningen_batches.json"));
}

struct ToyParams {
  double t1_us = kInf;
  double t2_us = kInf;
  double sq_error = 0.0;
  double cx_error = 0.0;
  double sq_duration_ns = 35.0;
  double cx_duration_ns = 300.0;
  double readout = 0.0;
};

// Qubits 0..n-1 with the given couplings (drive first), well separated
// frequencies.
inline device::DeviceSnapshot toy_device(int n,
                                         std::vector<std::pair<int, int>> edges,
                                         const ToyParams &p = {}) {
  std::vector<device::QubitCalibration> qs;
  for (int i = 0; i < n; ++i)
    qs.push_back({i, 4.8 + 0.09 * i, -0.33, p.t1_us, p.t2_us, p.readout,
                   p.readout, p.sq_error, p.sq_duration_ns});
  std::vector<device::EdgeCalibration> es;
  for (auto [d, t] : edges)
    es.push_back({d, t, p.cx_error, p.cx_duration_ns});
  return device::DeviceSnapshot("toy", "2024-01-01T00:00:00Z", qs, es);
}

// Path 0-1-...-(n-1), drive on the lower id.
inline device::DeviceSnapshot line_device(int n, const ToyParams &p = {}) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i)
    edges.emplace_back(i, i + 1);
  return toy_device(n, edges, p);
}

// Haar-ish random mixed state: G G^dagger / Tr with Gaussian G.
inline Matrix random_density(int n, Rng &rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  auto gauss = [&rng] {
    const double u1 = std::max(rng.uniform(), 1e-300), u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  Matrix g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      g(r, c) = cplx(gauss(), gauss());
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

} // namespace xtalk::fx
