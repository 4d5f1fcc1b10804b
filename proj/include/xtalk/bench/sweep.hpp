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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "xtalk/backend/backend.hpp"
#include "xtalk/bench/fidelity.hpp"
#include "xtalk/circuit/circuit.hpp"

namespace xtalk::bench {

// Randomized compiling: `randomizations` twirled instances, `shots_each` shots
// each, counts summed. Disabled when randomizations is 0.
struct TwirlSpec {
  int randomizations = 0;
  std::int64_t shots_each = 0;
  bool enabled() const { return randomizations > 0; }
};

// Parses "RxS", e.g. "100x100".
TwirlSpec parse_twirl(const std::string &text);

struct SweepOptions {
  TwirlSpec twirl;
  // Shots per layout without twirling; 0 uses the exact output distribution.
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
};

// Fidelity of the template on every layout against its noiseless
// distribution. Each layout is placed, mapped to native CX orientation,
// optionally twirled, and executed on `backend`; randomness is drawn from
// streams keyed by (seed, layout), so records do not depend on the order or
// number of layouts.
std::vector<FidelityRecord> sweep(const circuit::Circuit &templ,
                                  std::span<const std::vector<QubitId>> layouts,
                                  const backend::SimulatedBackend &backend,
                                  Source source, const SweepOptions &options);

// CSV with header layout,source,fidelity,flagged.
std::string records_csv(std::span<const FidelityRecord> records,
                        std::span<const std::vector<QubitId>> flagged);

// Scatter data: one point per layout with x = measured, y = simulated.
nlohmann::json plot_data(std::span<const FidelityRecord> measured,
                         std::span<const FidelityRecord> simulated,
                         std::span<const std::vector<QubitId>> flagged);

} // namespace xtalk::bench
