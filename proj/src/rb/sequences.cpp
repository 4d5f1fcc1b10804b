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

#include "xtalk/rb/sequences.hpp"

#include <algorithm>

#include "xtalk/common/error.hpp"
#include "xtalk/common/rng.hpp"
#include "xtalk/rb/clifford_group.hpp"

namespace xtalk::rb {

using circuit::Circuit;
using circuit::Gate;

RBConfig RBConfig::paper(std::uint64_t seed) {
  return {{1, 3, 10, 20, 40, 65, 95, 130, 175}, 5, 10000, seed};
}

RBConfig RBConfig::desk(std::uint64_t seed) {
  return {{1, 5, 20, 60}, 3, 2000, seed};
}

RBConfig RBConfig::preset(const std::string &name, std::uint64_t seed) {
  if (name == "paper")
    return paper(seed);
  if (name == "desk")
    return desk(seed);
  throw InputError("unknown RB preset '" + name + "' (expected paper or desk)");
}

void RBConfig::validate() const {
  if (lengths.empty())
    throw InputError("RB config: no lengths");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1)
      throw InputError("RB config: lengths must be >= 1");
    if (i > 0 && lengths[i] <= lengths[i - 1])
      throw InputError("RB config: lengths must be strictly increasing");
  }
  if (repetitions < 1)
    throw InputError("RB config: repetitions must be >= 1");
  if (shots < 1)
    throw InputError("RB config: shots must be >= 1");
}

nlohmann::json to_json(const RBConfig &config) {
  return {{"lengths", config.lengths},
          {"repetitions", config.repetitions},
          {"shots", config.shots},
          {"seed", config.seed}};
}

std::vector<std::size_t> sequence_indices(std::span<const QubitId> targets,
                                          int length, int repetition,
                                          std::uint64_t seed) {
  std::uint64_t stream = Rng::derive(seed, {Rng::tag("rb-sequence")});
  for (QubitId q : targets)
    stream = Rng::derive(stream, {static_cast<std::uint64_t>(q)});
  stream = Rng::derive(stream, {static_cast<std::uint64_t>(length),
                                static_cast<std::uint64_t>(repetition)});
  Rng rng(stream);
  const auto &group = CliffordGroup::get(static_cast<int>(targets.size()));
  std::vector<std::size_t> out(static_cast<std::size_t>(length));
  for (auto &i : out)
    i = group.sample(rng);
  return out;
}

namespace {

std::vector<Gate> place(const CliffordElement &e,
                        std::span<const QubitId> targets) {
  std::vector<Gate> out;
  for (Gate g : e.gates) {
    for (auto &q : g.qubits)
      q = targets[static_cast<std::size_t>(q)];
    out.push_back(std::move(g));
  }
  return out;
}

int register_size(int requested, QubitId max_target) {
  if (requested == 0)
    return max_target + 1;
  if (requested <= max_target)
    throw InputError("RB target outside the register");
  return requested;
}

} // namespace

std::vector<std::vector<Gate>>
sequence_layers(std::span<const QubitId> targets, int length, int repetition,
                std::uint64_t seed) {
  if (targets.size() != 1 && targets.size() != 2)
    throw InputError("RB targets must be 1 or 2 qubits");
  const int n = static_cast<int>(targets.size());
  const auto &group = CliffordGroup::get(n);
  std::vector<std::vector<Gate>> layers;
  auto product = sim::CliffordTableau::identity(n);
  for (std::size_t idx : sequence_indices(targets, length, repetition, seed)) {
    const auto &e = group.element(idx);
    product = product.then(e.tableau);
    layers.push_back(place(e, targets));
  }
  const auto inv = group.find(product.inverse());
  if (!inv)
    throw NumericalError("RB inverse is not a group element");
  layers.push_back(place(group.element(*inv), targets));
  return layers;
}

std::vector<RBCircuit> build_rb_circuits(std::span<const QubitId> targets,
                                         const RBConfig &config,
                                         int num_qubits) {
  config.validate();
  if (targets.empty())
    throw InputError("RB needs at least one target");
  const int n =
      register_size(num_qubits, *std::max_element(targets.begin(), targets.end()));
  const std::vector<QubitId> qs(targets.begin(), targets.end());
  std::vector<RBCircuit> out;
  for (int m : config.lengths)
    for (int r = 0; r < config.repetitions; ++r) {
      Circuit c(n);
      for (auto &layer : sequence_layers(targets, m, r, config.seed)) {
        for (auto &g : layer)
          c.append(std::move(g));
        c.barrier(qs);
      }
      for (QubitId q : qs)
        c.measure(q);
      out.push_back({m, r, std::move(c)});
    }
  return out;
}

std::vector<RBCircuit> build_batch_rb(std::span<const device::Triplet> batch,
                                      const RBConfig &config, int num_qubits) {
  config.validate();
  if (batch.empty())
    throw InputError("empty batch");
  QubitId max_q = 0;
  for (const auto &t : batch)
    for (QubitId q : t.qubits())
      max_q = std::max(max_q, q);
  const int n = register_size(num_qubits, max_q);
  std::vector<RBCircuit> out;
  for (int m : config.lengths)
    for (int r = 0; r < config.repetitions; ++r) {
      Circuit c(n);
      for (const auto &t : batch) {
        const QubitId pair[] = {t.drive, t.target};
        const QubitId spec[] = {t.spectator};
        auto pair_layers = sequence_layers(pair, m, r, config.seed);
        auto spec_layers = sequence_layers(spec, m, r, config.seed);
        for (std::size_t l = 0; l < pair_layers.size(); ++l) {
          for (auto &g : pair_layers[l])
            c.append(std::move(g));
          for (auto &g : spec_layers[l])
            c.append(std::move(g));
          c.barrier({t.drive, t.target, t.spectator});
        }
      }
      for (const auto &t : batch)
        for (QubitId q : t.qubits())
          c.measure(q);
      out.push_back({m, r, std::move(c)});
    }
  return out;
}

std::vector<RBCircuit> build_simultaneous_rb(const device::Triplet &triplet,
                                             const RBConfig &config,
                                             int num_qubits) {
  return build_batch_rb(std::span<const device::Triplet>(&triplet, 1), config,
                        num_qubits);
}

} // namespace xtalk::rb
