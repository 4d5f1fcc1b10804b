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

#include "xtalk/backend/backend.hpp"

#include "xtalk/circuit/transforms.hpp"

namespace xtalk::backend {

noise::ModelOptions ideal_options() {
  noise::ModelOptions o;
  o.gate_relaxation = false;
  o.gate_depolarizing = false;
  o.idle_relaxation = false;
  o.readout = false;
  return o;
}

SimulatedBackend::SimulatedBackend(device::DeviceSnapshot snapshot,
                                   BackendConfig config)
    : config_(std::move(config)),
      model_(noise::build_standard_model(snapshot, config_.options)) {
  if (config_.table)
    noise::validate(*config_.table, model_.snapshot());
  if (config_.injection)
    noise::validate(*config_.injection, model_.snapshot());
}

SimulatedBackend SimulatedBackend::ideal(const device::DeviceSnapshot &snapshot) {
  return {snapshot, BackendConfig{ideal_options(), {}, {}}};
}

SimulatedBackend SimulatedBackend::standard(const device::DeviceSnapshot &snapshot,
                                            noise::ModelOptions options) {
  return {snapshot, BackendConfig{std::move(options), {}, {}}};
}

SimulatedBackend SimulatedBackend::crosstalk(const device::DeviceSnapshot &snapshot,
                                             noise::CrosstalkTable table,
                                             noise::ModelOptions options) {
  return {snapshot, BackendConfig{std::move(options), std::move(table), {}}};
}

SimulatedBackend
SimulatedBackend::virtual_device(const device::DeviceSnapshot &snapshot,
                                 noise::CrosstalkInjection injection,
                                 noise::ModelOptions options) {
  return {snapshot,
          BackendConfig{std::move(options), {}, std::move(injection)}};
}

noise::BoundNoiseModel SimulatedBackend::bind(const circuit::Circuit &circuit) const {
  const auto native = circuit::map_to_native(circuit, model_.snapshot());
  const noise::CrosstalkTable *table = config_.table ? &*config_.table : nullptr;
  if (config_.injection)
    return noise::inject_crosstalk(model_, *config_.injection, native, table);
  if (table != nullptr)
    return noise::build_crosstalk_model(model_, *table, native);
  return noise::bind_to_circuit(model_, native);
}

Program SimulatedBackend::compile(const circuit::Circuit &circuit) const {
  return backend::compile(bind(circuit));
}

std::vector<double>
SimulatedBackend::distribution(const circuit::Circuit &circuit) const {
  return backend::distribution(compile(circuit));
}

sim::Counts SimulatedBackend::run(const circuit::Circuit &circuit,
                                  std::int64_t shots, std::uint64_t seed) const {
  return backend::sample(compile(circuit), shots, seed);
}

nlohmann::json SimulatedBackend::describe() const {
  nlohmann::json j = model_.report();
  j["crosstalk_table"] =
      config_.table ? noise::to_json(*config_.table) : nlohmann::json(nullptr);
  j["injection"] = config_.injection ? noise::to_json(*config_.injection)
                                     : nlohmann::json(nullptr);
  return j;
}

} // namespace xtalk::backend
