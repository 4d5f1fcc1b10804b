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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "xtalk/common/types.hpp"

namespace xtalk::device {

struct QubitCalibration {
  QubitId id = 0;
  double frequency_ghz = 0.0;     // omega_01
  double anharmonicity_ghz = 0.0; // omega_12 - omega_01, negative for transmons
  double t1_us = 0.0;
  double t2_us = 0.0;
  double readout_p0_given_1 = 0.0;
  double readout_p1_given_0 = 0.0;
  double sq_error = 0.0;
  double sq_duration_ns = 0.0;

  double frequency_12_ghz() const { return frequency_ghz + anharmonicity_ghz; }
};

// A calibrated two-qubit coupling. The drive is the qubit receiving the
// cross-resonance pulse; CX(drive, target) is the native orientation.
struct EdgeCalibration {
  QubitId drive = 0;
  QubitId target = 0;
  double cx_error = 0.0;
  double cx_duration_ns = 0.0;
};

// Immutable, validated device description. Qubit ids are 0..n-1.
class DeviceSnapshot {
public:
  // Throws InvariantError naming the offending field.
  DeviceSnapshot(std::string name, std::string timestamp,
                 std::vector<QubitCalibration> qubits,
                 std::vector<EdgeCalibration> edges);

  const std::string &name() const { return name_; }
  const std::string &timestamp() const { return timestamp_; }
  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  const std::vector<QubitCalibration> &qubits() const { return qubits_; }
  const std::vector<EdgeCalibration> &edges() const { return edges_; }

  const QubitCalibration &qubit(QubitId q) const;
  const std::vector<QubitId> &neighbors(QubitId q) const;
  bool adjacent(QubitId a, QubitId b) const;

  // Edge between a and b in either orientation, or nullptr.
  const EdgeCalibration *find_edge(QubitId a, QubitId b) const;
  // Edge with exactly this drive/target orientation, or nullptr.
  const EdgeCalibration *native_edge(QubitId drive, QubitId target) const;

  // Sorted (min, max) pairs.
  std::vector<std::pair<QubitId, QubitId>> undirected_edges() const;

private:
  std::string name_;
  std::string timestamp_;
  std::vector<QubitCalibration> qubits_;
  std::vector<EdgeCalibration> edges_;
  std::vector<std::vector<QubitId>> adjacency_;
  std::vector<std::vector<int>> edge_index_; // n x n, -1 when absent
};

DeviceSnapshot load_snapshot(std::istream &in);
DeviceSnapshot load_snapshot_file(const std::string &path);
DeviceSnapshot snapshot_from_json(const nlohmann::json &doc);
nlohmann::json to_json(const DeviceSnapshot &snapshot);

} // namespace xtalk::device
