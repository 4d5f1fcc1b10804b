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
#include <string>

#include "json.hpp"
#include "xtalk/device/calibration.hpp"
#include "xtalk/device/topology.hpp"

namespace xtalk::noise {

struct CrosstalkEntry {
  double cx_sim_error = 0.0;
  double sq_sim_error = 0.0;
  bool operator==(const CrosstalkEntry &) const = default;
};

// Simultaneously characterized error rates per triplet.
using CrosstalkTable = std::map<device::Triplet, CrosstalkEntry>;

// Ground-truth correlated depolarizing weight per triplet, applied on
// (drive, target, spectator) whenever the pair's CX fires with the spectator
// active.
using CrosstalkInjection = std::map<device::Triplet, double>;

// JSON: [{"pair":[d,t],"spectator":s,"cx_sim_error":..,"sq_sim_error":..}].
nlohmann::json to_json(const CrosstalkTable &table);
CrosstalkTable table_from_json(const nlohmann::json &doc);
CrosstalkTable load_table_file(const std::string &path);

// JSON: [{"pair":[d,t],"spectator":s,"weight":..}].
nlohmann::json to_json(const CrosstalkInjection &injection);
CrosstalkInjection injection_from_json(const nlohmann::json &doc);
CrosstalkInjection load_injection_file(const std::string &path);

// Throws InvariantError when a key is not a triplet of `snapshot` or a value
// leaves [0, 1].
void validate(const CrosstalkTable &table,
              const device::DeviceSnapshot &snapshot);
void validate(const CrosstalkInjection &injection,
              const device::DeviceSnapshot &snapshot);

} // namespace xtalk::noise
