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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "xtalk/simulator/density_matrix.hpp"

namespace xtalk::sim {

struct ReadoutError {
  double p1_given_0 = 0.0;
  double p0_given_1 = 0.0;
};

// Histogram of measured outcomes. Keys are outcome values: bit k is the k-th
// readout bit, printed as the k-th character from the right.
struct Counts {
  int num_bits = 0;
  std::int64_t shots = 0;
  std::map<std::uint64_t, std::int64_t> counts;

  std::int64_t total() const;
  double probability(std::uint64_t outcome) const;
  // Normalized probabilities indexed by outcome value.
  std::vector<double> distribution() const;
  // Adds another histogram over the same bits.
  void merge(const Counts &other);
  bool operator==(const Counts &) const = default;
};

std::string bitstring(std::uint64_t value, int num_bits);

nlohmann::json to_json(const Counts &counts);
Counts counts_from_json(const nlohmann::json &doc);

// Multinomial sample of `probs` (indexed by outcome value over `num_bits`
// bits), then independent classical flips of bit k per readout[k]. An empty
// readout span means perfect readout. Deterministic per seed.
Counts sample_distribution(std::span<const double> probs, int num_bits,
                           std::int64_t shots,
                           std::span<const ReadoutError> readout,
                           std::uint64_t seed);

// Per-shot outcomes of the same sampling procedure, in draw order.
std::vector<std::uint64_t> sample_shots(std::span<const double> probs,
                                        int num_bits, std::int64_t shots,
                                        std::span<const ReadoutError> readout,
                                        std::uint64_t seed);

// Outcome distribution after independent classical flips of bit k per
// readout[k].
std::vector<double> apply_readout(std::vector<double> probs,
                                  std::span<const ReadoutError> readout);

// Samples the computational-basis diagonal of `state`; readout[q] applies to
// qubit q.
Counts sample_counts(const DensityMatrix &state, std::int64_t shots,
                     std::span<const ReadoutError> readout, std::uint64_t seed);

} // namespace xtalk::sim
