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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "xtalk/backend/program.hpp"
#include "xtalk/circuit/circuit.hpp"
#include "xtalk/device/calibration.hpp"
#include "xtalk/noise/model.hpp"

namespace xtalk::backend {

struct BackendConfig {
  noise::ModelOptions options;
  // Crosstalk-aware model: CX and spectator strengths from this table.
  std::optional<noise::CrosstalkTable> table;
  // Ground-truth correlated crosstalk of a virtual device.
  std::optional<noise::CrosstalkInjection> injection;
};

// Density-matrix execution of physical circuits under a noise model bound to
// each circuit's schedule. Circuits are mapped to native CX orientation
// first. Immutable; safe to use from several threads.
class SimulatedBackend {
public:
  SimulatedBackend(device::DeviceSnapshot snapshot, BackendConfig config);

  static SimulatedBackend ideal(const device::DeviceSnapshot &snapshot);
  static SimulatedBackend standard(const device::DeviceSnapshot &snapshot,
                                   noise::ModelOptions options = {});
  static SimulatedBackend crosstalk(const device::DeviceSnapshot &snapshot,
                                    noise::CrosstalkTable table,
                                    noise::ModelOptions options = {});
  static SimulatedBackend
  virtual_device(const device::DeviceSnapshot &snapshot,
                 noise::CrosstalkInjection injection,
                 noise::ModelOptions options = {});

  const device::DeviceSnapshot &snapshot() const {
    return model_.snapshot();
  }
  const noise::NoiseModel &model() const { return model_; }
  const BackendConfig &config() const { return config_; }

  noise::BoundNoiseModel bind(const circuit::Circuit &circuit) const;
  Program compile(const circuit::Circuit &circuit) const;

  // Exact readout distribution including readout error.
  std::vector<double> distribution(const circuit::Circuit &circuit) const;
  // Sampled counts; deterministic per seed.
  sim::Counts run(const circuit::Circuit &circuit, std::int64_t shots,
                  std::uint64_t seed) const;

  nlohmann::json describe() const;

private:
  BackendConfig config_;
  noise::NoiseModel model_;
};

noise::ModelOptions ideal_options();

} // namespace xtalk::backend
