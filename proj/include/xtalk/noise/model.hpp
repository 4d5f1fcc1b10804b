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

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "xtalk/circuit/circuit.hpp"
#include "xtalk/device/calibration.hpp"
#include "xtalk/noise/channels.hpp"
#include "xtalk/noise/crosstalk.hpp"
#include "xtalk/simulator/sampling.hpp"

namespace xtalk::noise {

struct ModelOptions {
  bool gate_relaxation = true;   // thermal relaxation over gate durations
  bool gate_depolarizing = true; // depolarizing tuned to calibrated rates
  bool idle_relaxation = true;   // thermal relaxation over idle intervals
  bool readout = true;
  // Depolarizing channel of average error rate r placed at every BARRIER of
  // width k, keyed by k. Used to emulate pure per-layer noise.
  std::map<int, double> barrier_error;
};

struct NoiseWarning {
  std::string where;
  std::string message;
};

// Channel attached to one gate: thermal relaxation over the gate duration
// followed by depolarizing tuned so that the composite has `target_rate`.
struct GateNoise {
  std::shared_ptr<const KrausChannel> channel;
  double target_rate = 0.0;
  double relaxation_rate = 0.0; // average error of the thermal part alone
  double depolarizing_weight = 0.0;
  bool clamped = false;
};

// Solves for the depolarizing weight that brings `thermal` to average error
// `target_rate`; clamps to [0, 1] and reports clamping through `clamped`.
GateNoise tune_composite(const KrausChannel &thermal, double target_rate);

// Circuit-independent noise derived from calibration data.
class NoiseModel {
public:
  NoiseModel(device::DeviceSnapshot snapshot, ModelOptions options);

  const device::DeviceSnapshot &snapshot() const { return snapshot_; }
  const ModelOptions &options() const { return options_; }
  const GateNoise &single_qubit(QubitId q) const { return sq_[q]; }
  // Noise of the CX on this coupling; (drive, target) must be an edge.
  const GateNoise &cx(QubitId control, QubitId target) const;
  // CX noise with a different target rate (used by the crosstalk model).
  GateNoise cx_with_rate(QubitId control, QubitId target, double rate) const;
  sim::ReadoutError readout(QubitId q) const;
  // Thermal relaxation of qubit q over an idle interval, or nullptr when
  // idle relaxation is disabled or the qubit does not decay.
  std::shared_ptr<const KrausChannel> idle_channel(QubitId q,
                                                   double duration_ns) const;
  std::shared_ptr<const KrausChannel> barrier_channel(int width) const;
  const std::vector<NoiseWarning> &warnings() const { return warnings_; }

  nlohmann::json report() const;

private:
  KrausChannel cx_thermal(QubitId control, QubitId target) const;

  device::DeviceSnapshot snapshot_;
  ModelOptions options_;
  std::vector<GateNoise> sq_;
  std::vector<GateNoise> cx_; // parallel to snapshot.edges()
  std::map<int, std::shared_ptr<const KrausChannel>> barrier_;
  std::vector<NoiseWarning> warnings_;
};

NoiseModel build_standard_model(const device::DeviceSnapshot &snapshot,
                                ModelOptions options = {});

// One step of a noisy execution: a unitary gate or a channel.
struct NoisyOp {
  enum class Kind { Gate, Channel };
  Kind kind = Kind::Gate;
  circuit::Gate gate;
  std::shared_ptr<const KrausChannel> channel;
  std::vector<QubitId> qubits;
  std::string tag; // sq, cx, idle, spectator, injection, layer
};

// A noise model bound to one circuit's schedule.
struct BoundNoiseModel {
  std::vector<NoisyOp> ops;
  std::vector<QubitId> readout_order;
  std::vector<sim::ReadoutError> readout; // parallel to readout_order
  std::vector<NoiseWarning> warnings;

  nlohmann::json report() const;
};

// Standard model: every gate gets its calibrated channel, idle intervals of
// the ASAP schedule get thermal relaxation.
BoundNoiseModel bind_to_circuit(const NoiseModel &model,
                                const circuit::Circuit &circuit);

// Crosstalk-aware model: a CX whose pair has active spectators in `table`
// uses the largest cx_sim_error among them and each such spectator receives
// an identity gate with depolarizing from its sq_sim_error, composed right
// after the CX channel.
BoundNoiseModel build_crosstalk_model(const NoiseModel &model,
                                      const CrosstalkTable &table,
                                      const circuit::Circuit &circuit);

// Adds the ground-truth correlated channel of `injection` after every CX that
// fires with an injected active spectator.
BoundNoiseModel inject_crosstalk(const NoiseModel &model,
                                 const CrosstalkInjection &injection,
                                 const circuit::Circuit &circuit,
                                 const CrosstalkTable *table = nullptr);

} // namespace xtalk::noise
