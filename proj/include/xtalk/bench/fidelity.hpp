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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xtalk/common/types.hpp"
#include "xtalk/simulator/sampling.hpp"

namespace xtalk::bench {

// (sum_i sqrt(p_i q_i))^2. Throws InputError on a size mismatch or when a
// distribution is not normalized within 1e-9.
double hellinger_fidelity(std::span<const double> p, std::span<const double> q);
// Counts are normalized first.
double hellinger_fidelity(const sim::Counts &counts, std::span<const double> q);

enum class Source { MeasuredRun1, MeasuredRun2, ModelStandard, ModelCrosstalk };

std::string_view source_name(Source s);
Source parse_source(std::string_view name);

struct FidelityRecord {
  std::vector<QubitId> layout;
  double fidelity = 0.0;
  Source source = Source::MeasuredRun1;
};

std::string layout_name(std::span<const QubitId> layout); // dash-joined

struct ComparisonResult {
  double rms = 0.0;
  double rms_reduced = 0.0; // over layouts not flagged
  std::vector<std::vector<QubitId>> flagged_layouts;
};

// Layouts whose fidelities differ by more than `threshold` between runs.
// Throws InputError when the runs cover different layouts.
std::vector<std::vector<QubitId>>
filter_outliers(std::span<const FidelityRecord> run1,
                std::span<const FidelityRecord> run2, double threshold = 0.02);

// RMS of fidelity differences per layout; the reduced value skips `flagged`.
// Throws InputError when the record sets cover different layouts.
ComparisonResult compare(std::span<const FidelityRecord> measured,
                         std::span<const FidelityRecord> simulated,
                         std::span<const std::vector<QubitId>> flagged = {});

nlohmann::json to_json(const ComparisonResult &c);

} // namespace xtalk::bench
