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

#include "xtalk/simulator/sampling.hpp"

#include <algorithm>
#include <string>

#include "xtalk/common/error.hpp"
#include "xtalk/common/rng.hpp"

namespace xtalk::sim {

std::int64_t Counts::total() const {
  std::int64_t t = 0;
  for (const auto &[k, v] : counts)
    t += v;
  return t;
}

double Counts::probability(std::uint64_t outcome) const {
  const auto it = counts.find(outcome);
  if (it == counts.end() || shots == 0)
    return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(shots);
}

std::vector<double> Counts::distribution() const {
  std::vector<double> out(std::size_t{1} << num_bits, 0.0);
  for (const auto &[k, v] : counts)
    out[k] = static_cast<double>(v) / static_cast<double>(shots);
  return out;
}

void Counts::merge(const Counts &other) {
  if (num_bits != other.num_bits)
    throw InputError("cannot merge counts over different bit counts");
  shots += other.shots;
  for (const auto &[k, v] : other.counts)
    counts[k] += v;
}

std::string bitstring(std::uint64_t value, int num_bits) {
  std::string s(static_cast<std::size_t>(num_bits), '0');
  for (int k = 0; k < num_bits; ++k)
    if (value >> k & 1)
      s[static_cast<std::size_t>(num_bits - 1 - k)] = '1';
  return s;
}

nlohmann::json to_json(const Counts &counts) {
  nlohmann::json c = nlohmann::json::object();
  for (const auto &[k, v] : counts.counts)
    c[bitstring(k, counts.num_bits)] = v;
  return {{"shots", counts.shots}, {"counts", c}};
}

Counts counts_from_json(const nlohmann::json &doc) {
  try {
    Counts out;
    out.shots = doc.at("shots").get<std::int64_t>();
    out.num_bits = -1;
    for (const auto &[key, value] : doc.at("counts").items()) {
      if (out.num_bits < 0)
        out.num_bits = static_cast<int>(key.size());
      if (static_cast<int>(key.size()) != out.num_bits ||
          key.find_first_not_of("01") != std::string::npos)
        throw ParseError("counts: malformed outcome '" + key + "'");
      const auto v = value.get<std::int64_t>();
      if (v < 0)
        throw ParseError("counts: negative count for '" + key + "'");
      out.counts[std::stoull(key, nullptr, 2)] += v;
    }
    out.num_bits = std::max(out.num_bits, 0);
    if (out.total() != out.shots)
      throw ParseError("counts: values do not sum to shots");
    return out;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("counts: ") + e.what());
  }
}

std::vector<std::uint64_t> sample_shots(std::span<const double> probs,
                                        int num_bits, std::int64_t shots,
                                        std::span<const ReadoutError> readout,
                                        std::uint64_t seed) {
  if (shots <= 0)
    throw InputError("shots must be positive");
  if (probs.size() != (std::size_t{1} << num_bits))
    throw InputError("distribution size does not match the bit count");
  if (!readout.empty() && static_cast<int>(readout.size()) != num_bits)
    throw InputError("readout errors do not match the bit count");

  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += std::max(0.0, probs[i]);
    cdf[i] = acc;
  }
  Rng rng(seed);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
  for (auto &outcome : out) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end())
      --it;
    outcome = static_cast<std::uint64_t>(it - cdf.begin());
    for (std::size_t k = 0; k < readout.size(); ++k) {
      const bool one = outcome >> k & 1;
      const double p_flip = one ? readout[k].p0_given_1 : readout[k].p1_given_0;
      if (p_flip > 0.0 && rng.uniform() < p_flip)
        outcome ^= std::uint64_t{1} << k;
    }
  }
  return out;
}

Counts sample_distribution(std::span<const double> probs, int num_bits,
                           std::int64_t shots,
                           std::span<const ReadoutError> readout,
                           std::uint64_t seed) {
  Counts out;
  out.num_bits = num_bits;
  out.shots = shots;
  for (auto outcome : sample_shots(probs, num_bits, shots, readout, seed))
    ++out.counts[outcome];
  return out;
}

std::vector<double> apply_readout(std::vector<double> probs,
                                  std::span<const ReadoutError> readout) {
  for (std::size_t k = 0; k < readout.size(); ++k) {
    const auto bit = std::size_t{1} << k;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (i & bit)
        continue;
      const double p0 = probs[i], p1 = probs[i | bit];
      probs[i] = p0 * (1.0 - readout[k].p1_given_0) + p1 * readout[k].p0_given_1;
      probs[i | bit] = p0 * readout[k].p1_given_0 + p1 * (1.0 - readout[k].p0_given_1);
    }
  }
  return probs;
}

Counts sample_counts(const DensityMatrix &state, std::int64_t shots,
                     std::span<const ReadoutError> readout,
                     std::uint64_t seed) {
  const auto diag = state.diagonal();
  return sample_distribution(diag, state.num_qubits(), shots, readout, seed);
}

} // namespace xtalk::sim
