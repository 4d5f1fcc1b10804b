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

#include "xtalk/rb/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "xtalk/common/error.hpp"
#include "xtalk/common/parallel.hpp"
#include "xtalk/common/rng.hpp"
#include "xtalk/rb/clifford_group.hpp"

namespace xtalk::rb {

namespace {

std::uint64_t shots_seed(std::uint64_t seed, const RBCircuit &c) {
  return Rng::derive(seed, {Rng::tag("rb-shots"),
                            static_cast<std::uint64_t>(c.length),
                            static_cast<std::uint64_t>(c.repetition)});
}

std::vector<sim::Counts> run_all(const backend::SimulatedBackend &backend,
                                 std::span<const RBCircuit> circuits,
                                 const RBConfig &config) {
  std::vector<sim::Counts> out(circuits.size());
  parallel_for(static_cast<std::int64_t>(circuits.size()), [&](std::int64_t i) {
    const auto &c = circuits[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] =
        backend.run(c.circuit, config.shots, shots_seed(config.seed, c));
  });
  return out;
}

SubsystemResult fit_subsystem(std::vector<QubitId> qubits,
                              std::span<const RBCircuit> circuits,
                              std::span<const sim::Counts> counts,
                              std::span<const int> bits, int dim) {
  SubsystemResult s;
  s.qubits = std::move(qubits);
  s.points = survival_points(circuits, counts, bits);
  s.fit = fit_decay(s.points, dim);
  return s;
}

} // namespace

std::vector<RBPoint> survival_points(std::span<const RBCircuit> circuits,
                                     std::span<const sim::Counts> counts,
                                     std::span<const int> bits) {
  if (circuits.size() != counts.size())
    throw InputError("survival_points: circuits and counts differ in size");
  std::uint64_t mask = 0;
  for (int b : bits)
    mask |= std::uint64_t{1} << b;
  std::map<int, std::vector<double>> by_length;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    std::int64_t zeros = 0;
    for (const auto &[outcome, n] : counts[i].counts)
      if ((outcome & mask) == 0)
        zeros += n;
    by_length[circuits[i].length].push_back(
        static_cast<double>(zeros) / static_cast<double>(counts[i].shots));
  }
  std::vector<RBPoint> out;
  for (const auto &[m, values] : by_length) {
    const double k = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values)
      mean += v;
    mean /= k;
    double var = 0.0;
    for (double v : values)
      var += (v - mean) * (v - mean);
    const double se = values.size() > 1 ? std::sqrt(var / (k - 1.0) / k) : 0.0;
    out.push_back({m, mean, se});
  }
  return out;
}

double pair_gate_error(double r_clifford, double sq_error_drive,
                       double sq_error_target) {
  const auto &group = CliffordGroup::get(2);
  const double e_clifford = r_clifford * 5.0 / 4.0;
  const double e_single = 1.5 * (sq_error_drive * group.mean_physical_1q(0) +
                                 sq_error_target * group.mean_physical_1q(1));
  const double e_cx = (e_clifford - e_single) / group.mean_cx();
  return std::max(0.0, e_cx * 4.0 / 5.0);
}

double single_gate_error(double r_clifford) {
  return std::max(0.0, r_clifford / CliffordGroup::get(1).mean_physical_1q(0));
}

SubsystemResult run_isolated_rb(const backend::SimulatedBackend &backend,
                                std::span<const QubitId> targets,
                                const RBConfig &config) {
  const auto circuits =
      build_rb_circuits(targets, config, backend.snapshot().num_qubits());
  const auto counts = run_all(backend, circuits, config);
  std::vector<int> bits(targets.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    bits[i] = static_cast<int>(i);
  const int dim = 1 << targets.size();
  auto s = fit_subsystem({targets.begin(), targets.end()}, circuits, counts,
                         bits, dim);
  const auto &snap = backend.snapshot();
  s.gate_error = targets.size() == 2
                     ? pair_gate_error(s.fit.r, snap.qubit(targets[0]).sq_error,
                                       snap.qubit(targets[1]).sq_error)
                     : single_gate_error(s.fit.r);
  return s;
}

CharacterizationResult characterize(const backend::SimulatedBackend &backend,
                                    std::span<const device::Batch> batches,
                                    const RBConfig &config) {
  config.validate();
  const auto &snap = backend.snapshot();
  std::vector<device::Triplet> all;
  for (const auto &b : batches)
    all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  const auto violations = device::validate_batches(batches, snap, all);
  if (!violations.empty())
    throw InputError("batches are not valid for this device: " +
                     violations.front().message);

  std::vector<RBCircuit> circuits;
  std::vector<std::size_t> offsets;
  for (const auto &batch : batches) {
    offsets.push_back(circuits.size());
    auto part = build_batch_rb(batch, config, snap.num_qubits());
    std::move(part.begin(), part.end(), std::back_inserter(circuits));
  }
  offsets.push_back(circuits.size());
  const auto counts = run_all(backend, circuits, config);

  CharacterizationResult result;
  result.config = config;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const std::span<const RBCircuit> bc(circuits.data() + offsets[b],
                                        offsets[b + 1] - offsets[b]);
    const std::span<const sim::Counts> bn(counts.data() + offsets[b],
                                          offsets[b + 1] - offsets[b]);
    for (std::size_t j = 0; j < batches[b].size(); ++j) {
      const auto &t = batches[b][j];
      const int base = static_cast<int>(3 * j);
      const int pair_bits[] = {base, base + 1};
      const int spec_bits[] = {base + 2};
      TripletResult tr;
      tr.triplet = t;
      tr.pair = fit_subsystem({t.drive, t.target}, bc, bn, pair_bits, 4);
      tr.pair.gate_error =
          pair_gate_error(tr.pair.fit.r, snap.qubit(t.drive).sq_error,
                          snap.qubit(t.target).sq_error);
      tr.spectator = fit_subsystem({t.spectator}, bc, bn, spec_bits, 2);
      tr.spectator.gate_error = single_gate_error(tr.spectator.fit.r);
      for (const auto *s : {&tr.pair, &tr.spectator})
        for (const auto &w : s->fit.warnings)
          result.warnings.push_back(device::to_string(t) + ": " + w);
      result.table[t] = {std::min(1.0, tr.pair.gate_error),
                         std::min(1.0, tr.spectator.gate_error)};
      result.triplets.push_back(std::move(tr));
    }
  }
  std::sort(result.triplets.begin(), result.triplets.end(),
            [](const TripletResult &a, const TripletResult &b) {
              return a.triplet < b.triplet;
            });
  return result;
}

IsolatedRates characterize_isolated(const backend::SimulatedBackend &backend,
                                    std::span<const device::Triplet> triplets,
                                    const RBConfig &config) {
  config.validate();
  std::set<std::pair<QubitId, QubitId>> pairs;
  std::set<QubitId> qubits;
  for (const auto &t : triplets) {
    device::check_triplet(t, backend.snapshot());
    pairs.insert({t.drive, t.target});
    qubits.insert(t.spectator);
  }
  IsolatedRates out;
  for (const auto &[d, t] : pairs) {
    const QubitId q[] = {d, t};
    out.pairs[{d, t}] = run_isolated_rb(backend, q, config);
  }
  for (QubitId s : qubits) {
    const QubitId q[] = {s};
    out.qubits[s] = run_isolated_rb(backend, q, config);
  }
  return out;
}

nlohmann::json to_json(const SubsystemResult &s) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto &p : s.points)
    pts.push_back(to_json(p));
  return {{"qubits", s.qubits},
          {"points", pts},
          {"fit", to_json(s.fit)},
          {"gate_error", s.gate_error}};
}

nlohmann::json to_json(const CharacterizationResult &result) {
  nlohmann::json trips = nlohmann::json::array();
  for (const auto &t : result.triplets) {
    auto j = device::triplet_to_json(t.triplet);
    j["pair_rb"] = to_json(t.pair);
    j["spectator_rb"] = to_json(t.spectator);
    trips.push_back(j);
  }
  return {{"config", to_json(result.config)},
          {"survival_observable",
           "all-zeros probability per subsystem, marginalized from one "
           "simultaneous circuit"},
          {"gate_error_conversion",
           "pair: CX error from the two-qubit error per Clifford after removing "
           "calibrated single-qubit gate errors; spectator: error per Clifford "
           "divided by the mean physical gate count"},
          {"triplets", trips},
          {"table", noise::to_json(result.table)},
          {"warnings", result.warnings}};
}

nlohmann::json to_json(const IsolatedRates &rates) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto &[p, s] : rates.pairs)
    pairs.push_back(to_json(s));
  nlohmann::json qubits = nlohmann::json::array();
  for (const auto &[q, s] : rates.qubits)
    qubits.push_back(to_json(s));
  return {{"pairs", pairs}, {"qubits", qubits}};
}

} // namespace xtalk::rb
