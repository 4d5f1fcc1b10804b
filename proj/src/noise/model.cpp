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

#include "xtalk/noise/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "xtalk/circuit/schedule.hpp"
#include "xtalk/common/error.hpp"

namespace xtalk::noise {

using circuit::Gate;
using circuit::GateKind;

GateNoise tune_composite(const KrausChannel &thermal, double target_rate) {
  const double d = thermal.dim();
  const double f_thermal = thermal.process_fidelity();
  const double f_target = 1.0 - target_rate * (d + 1.0) / d;
  GateNoise out;
  out.target_rate = target_rate;
  out.relaxation_rate = thermal.average_error();
  const double floor = f_thermal - 1.0 / (d * d);
  double lambda = floor > 0.0 ? (f_thermal - f_target) / floor : 0.0;
  if (lambda < 0.0 || lambda > 1.0) {
    out.clamped = true;
    lambda = std::clamp(lambda, 0.0, 1.0);
  }
  out.depolarizing_weight = lambda;
  const KrausChannel depol = depolarizing_weight(thermal.arity, lambda);
  out.channel = std::make_shared<const KrausChannel>(
      lambda == 0.0 ? thermal : compose(thermal, depol));
  return out;
}

namespace {

KrausChannel qubit_thermal(const device::QubitCalibration &q,
                           double duration_ns, bool enabled) {
  if (!enabled)
    return identity_channel(1);
  return thermal_relaxation(q.t1_us, q.t2_us, duration_ns);
}

std::string pair_name(QubitId a, QubitId b) {
  return "cx(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

} // namespace

NoiseModel::NoiseModel(device::DeviceSnapshot snapshot, ModelOptions options)
    : snapshot_(std::move(snapshot)), options_(std::move(options)) {
  for (const auto &q : snapshot_.qubits()) {
    const KrausChannel thermal =
        qubit_thermal(q, q.sq_duration_ns, options_.gate_relaxation);
    GateNoise g;
    if (options_.gate_depolarizing) {
      g = tune_composite(thermal, q.sq_error);
      if (g.clamped)
        warnings_.push_back(
            {"q" + std::to_string(q.id),
             "sq_error below the relaxation floor; depolarizing clamped"});
    } else {
      g.channel = std::make_shared<const KrausChannel>(thermal);
      g.relaxation_rate = g.target_rate = thermal.average_error();
    }
    sq_.push_back(std::move(g));
  }
  for (const auto &e : snapshot_.edges()) {
    for (const auto &[c, t] : {std::pair{e.drive, e.target},
                               std::pair{e.target, e.drive}}) {
      const KrausChannel thermal = cx_thermal(c, t);
      GateNoise g;
      if (options_.gate_depolarizing) {
        g = tune_composite(thermal, e.cx_error);
        if (g.clamped && c == e.drive)
          warnings_.push_back(
              {pair_name(c, t),
               "cx_error below the relaxation floor; depolarizing clamped"});
      } else {
        g.channel = std::make_shared<const KrausChannel>(thermal);
        g.relaxation_rate = g.target_rate = thermal.average_error();
      }
      cx_.push_back(std::move(g));
    }
  }
  for (const auto &[width, rate] : options_.barrier_error) {
    if (width < 1 || width > 4)
      throw InputError("barrier_error: width must be in [1, 4]");
    const auto params = rate_to_depol(rate, width);
    barrier_[width] = std::make_shared<const KrausChannel>(
        depolarizing_weight(width, params.lambda_total));
  }
}

KrausChannel NoiseModel::cx_thermal(QubitId control, QubitId target) const {
  const auto *e = snapshot_.find_edge(control, target);
  const double t = e->cx_duration_ns;
  return tensor(qubit_thermal(snapshot_.qubit(control), t,
                              options_.gate_relaxation),
                qubit_thermal(snapshot_.qubit(target), t,
                              options_.gate_relaxation));
}

const GateNoise &NoiseModel::cx(QubitId control, QubitId target) const {
  const auto *e = snapshot_.find_edge(control, target);
  if (e == nullptr)
    throw InputError("no coupling between " + std::to_string(control) +
                     " and " + std::to_string(target));
  const auto index = static_cast<std::size_t>(e - snapshot_.edges().data());
  return cx_[2 * index + (e->drive == control ? 0 : 1)];
}

GateNoise NoiseModel::cx_with_rate(QubitId control, QubitId target,
                                   double rate) const {
  if (snapshot_.find_edge(control, target) == nullptr)
    throw InputError("no coupling between " + std::to_string(control) +
                     " and " + std::to_string(target));
  return tune_composite(cx_thermal(control, target), rate);
}

sim::ReadoutError NoiseModel::readout(QubitId q) const {
  if (!options_.readout)
    return {};
  const auto &c = snapshot_.qubit(q);
  return {c.readout_p1_given_0, c.readout_p0_given_1};
}

std::shared_ptr<const KrausChannel>
NoiseModel::idle_channel(QubitId q, double duration_ns) const {
  if (!options_.idle_relaxation || duration_ns <= 0.0)
    return nullptr;
  const auto &c = snapshot_.qubit(q);
  auto ch = thermal_relaxation(c.t1_us, c.t2_us, duration_ns);
  if (ch.depolarizing_weight == 0.0)
    return nullptr;
  return std::make_shared<const KrausChannel>(std::move(ch));
}

std::shared_ptr<const KrausChannel> NoiseModel::barrier_channel(int width) const {
  const auto it = barrier_.find(width);
  return it == barrier_.end() ? nullptr : it->second;
}

nlohmann::json NoiseModel::report() const {
  auto gate_json = [](const GateNoise &g) {
    return nlohmann::json{{"target_rate", g.target_rate},
                          {"relaxation_rate", g.relaxation_rate},
                          {"depolarizing_weight", g.depolarizing_weight},
                          {"clamped", g.clamped},
                          {"channel", describe(*g.channel)}};
  };
  nlohmann::json sq = nlohmann::json::array();
  for (std::size_t q = 0; q < sq_.size(); ++q) {
    auto j = gate_json(sq_[q]);
    j["qubit"] = q;
    j["readout"] = {{"p1_given_0", readout(static_cast<QubitId>(q)).p1_given_0},
                    {"p0_given_1", readout(static_cast<QubitId>(q)).p0_given_1}};
    sq.push_back(j);
  }
  nlohmann::json cx = nlohmann::json::array();
  for (std::size_t i = 0; i < snapshot_.edges().size(); ++i) {
    const auto &e = snapshot_.edges()[i];
    auto j = gate_json(cx_[2 * i]);
    j["pair"] = {e.drive, e.target};
    cx.push_back(j);
  }
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto &w : warnings_)
    warnings.push_back({{"where", w.where}, {"message", w.message}});
  nlohmann::json barrier = nlohmann::json::object();
  for (const auto &[width, rate] : options_.barrier_error)
    barrier[std::to_string(width)] = rate;
  return {{"device", snapshot_.name()},
          {"options",
           {{"gate_relaxation", options_.gate_relaxation},
            {"gate_depolarizing", options_.gate_depolarizing},
            {"idle_relaxation", options_.idle_relaxation},
            {"readout", options_.readout},
            {"barrier_error", barrier}}},
          {"single_qubit", sq},
          {"cx", cx},
          {"warnings", warnings}};
}

NoiseModel build_standard_model(const device::DeviceSnapshot &snapshot,
                                ModelOptions options) {
  return NoiseModel(snapshot, std::move(options));
}

nlohmann::json BoundNoiseModel::report() const {
  std::map<std::string, int> by_tag;
  std::map<std::string, double> weight_by_tag;
  for (const auto &op : ops) {
    if (op.kind != NoisyOp::Kind::Channel)
      continue;
    ++by_tag[op.tag];
    if (op.channel->depolarizing_weight)
      weight_by_tag[op.tag] += *op.channel->depolarizing_weight;
  }
  nlohmann::json channels = nlohmann::json::object();
  for (const auto &[tag, n] : by_tag)
    channels[tag] = {{"count", n}, {"depolarizing_weight_sum", weight_by_tag[tag]}};
  nlohmann::json warn = nlohmann::json::array();
  for (const auto &w : warnings)
    warn.push_back({{"where", w.where}, {"message", w.message}});
  return {{"operations", ops.size()},
          {"channels", channels},
          {"readout_order", readout_order},
          {"warnings", warn}};
}

namespace {

class Binder {
public:
  Binder(const NoiseModel &model, const circuit::Circuit &circuit,
         const CrosstalkTable *table, const CrosstalkInjection *injection)
      : model_(model), snapshot_(model.snapshot()), circuit_(circuit),
        table_(table), injection_(injection),
        schedule_(circuit::schedule(circuit, model.snapshot())),
        next_idle_(static_cast<std::size_t>(circuit.num_qubits()), 0) {}

  BoundNoiseModel run() {
    const auto &instructions = circuit_.instructions();
    for (std::size_t i = 0; i < instructions.size(); ++i) {
      const Gate &g = instructions[i];
      const auto &item = schedule_.items[i];
      switch (g.kind) {
      case GateKind::DELAY:
        break;
      case GateKind::BARRIER:
        if (auto ch = model_.barrier_channel(static_cast<int>(g.qubits.size()))) {
          flush_idle(g.qubits, item.span.start);
          push_channel(ch, g.qubits, "layer");
        }
        break;
      case GateKind::MEASURE:
        flush_idle(g.qubits, item.span.start);
        break;
      case GateKind::CX:
        flush_idle(g.qubits, item.span.start);
        push_gate(g);
        if (!g.frame)
          bind_cx(g, item.span.start);
        break;
      default:
        flush_idle(g.qubits, item.span.start);
        push_gate(g);
        if (!circuit::is_virtual(g))
          push_channel(model_.single_qubit(g.qubits[0]).channel, g.qubits,
                       "sq");
        break;
      }
    }
    out_.readout_order = circuit_.readout_order();
    for (QubitId q : out_.readout_order)
      out_.readout.push_back(model_.readout(q));
    return std::move(out_);
  }

private:
  void push_gate(const Gate &g) {
    if (g.kind == GateKind::I)
      return;
    out_.ops.push_back({NoisyOp::Kind::Gate, g, nullptr, g.qubits, "gate"});
  }

  void push_channel(std::shared_ptr<const KrausChannel> ch,
                    std::vector<QubitId> qubits, std::string tag) {
    if (!ch || ch->depolarizing_weight == 0.0)
      return;
    out_.ops.push_back({NoisyOp::Kind::Channel, Gate{}, std::move(ch),
                        std::move(qubits), std::move(tag)});
  }

  // Relaxation over every idle interval of `qubits` that ended by `time`.
  void flush_idle(const std::vector<QubitId> &qubits, double time) {
    for (QubitId q : qubits) {
      const auto &intervals = schedule_.idle[q];
      auto &next = next_idle_[q];
      double total = 0.0;
      while (next < intervals.size() && intervals[next].end <= time + 1e-9)
        total += intervals[next++].length();
      push_channel(model_.idle_channel(q, total), {q}, "idle");
    }
  }

  void bind_cx(const Gate &g, double start) {
    const QubitId c = g.qubits[0], t = g.qubits[1];
    const auto *edge = snapshot_.find_edge(c, t);
    if (edge == nullptr)
      throw InputError("cx on uncoupled pair " + std::to_string(c) + "," +
                       std::to_string(t));
    const QubitId drive = edge->drive, target = edge->target;

    std::set<QubitId> active;
    bool active_known = false;
    auto is_active = [&](QubitId s) {
      if (!active_known) {
        active = circuit::active_qubits(schedule_, start);
        active_known = true;
      }
      return active.count(s) > 0;
    };

    std::vector<std::pair<QubitId, CrosstalkEntry>> hits;
    if (table_ != nullptr)
      for (QubitId s : snapshot_.neighbors(drive)) {
        if (s == target)
          continue;
        const auto it = table_->find({drive, target, s});
        if (it != table_->end() && is_active(s))
          hits.emplace_back(s, it->second);
      }

    if (hits.empty()) {
      push_channel(model_.cx(c, t).channel, g.qubits, "cx");
    } else {
      double rate = 0.0;
      for (const auto &[s, entry] : hits)
        rate = std::max(rate, entry.cx_sim_error);
      push_channel(cx_channel(c, t, rate), g.qubits, "cx");
      for (const auto &[s, entry] : hits)
        push_channel(spectator_channel(entry.sq_sim_error), {s}, "spectator");
    }

    if (injection_ != nullptr)
      for (QubitId s : snapshot_.neighbors(drive)) {
        if (s == target)
          continue;
        const auto it = injection_->find({drive, target, s});
        if (it != injection_->end() && it->second > 0.0 && is_active(s))
          push_channel(injection_channel(it->second), {drive, target, s},
                       "injection");
      }
  }

  std::shared_ptr<const KrausChannel> cx_channel(QubitId c, QubitId t,
                                                 double rate) {
    const auto key = std::make_tuple(c, t, rate);
    auto it = cx_cache_.find(key);
    if (it == cx_cache_.end()) {
      GateNoise g = model_.cx_with_rate(c, t, rate);
      if (g.clamped)
        out_.warnings.push_back(
            {"cx(" + std::to_string(c) + "," + std::to_string(t) + ")",
             "cx_sim_error below the relaxation floor; depolarizing clamped"});
      it = cx_cache_.emplace(key, g.channel).first;
    }
    return it->second;
  }

  std::shared_ptr<const KrausChannel> spectator_channel(double rate) {
    auto &slot = spectator_cache_[rate];
    if (!slot)
      slot = std::make_shared<const KrausChannel>(
          depolarizing_weight(1, rate_to_depol(std::min(rate, 0.5), 1).lambda_total));
    return slot;
  }

  std::shared_ptr<const KrausChannel> injection_channel(double weight) {
    auto &slot = injection_cache_[weight];
    if (!slot)
      slot = std::make_shared<const KrausChannel>(depolarizing_weight(3, weight));
    return slot;
  }

  const NoiseModel &model_;
  const device::DeviceSnapshot &snapshot_;
  const circuit::Circuit &circuit_;
  const CrosstalkTable *table_;
  const CrosstalkInjection *injection_;
  circuit::Schedule schedule_;
  std::vector<std::size_t> next_idle_;
  std::map<std::tuple<QubitId, QubitId, double>,
           std::shared_ptr<const KrausChannel>>
      cx_cache_;
  std::map<double, std::shared_ptr<const KrausChannel>> spectator_cache_;
  std::map<double, std::shared_ptr<const KrausChannel>> injection_cache_;
  BoundNoiseModel out_;
};

} // namespace

BoundNoiseModel bind_to_circuit(const NoiseModel &model,
                                const circuit::Circuit &circuit) {
  return Binder(model, circuit, nullptr, nullptr).run();
}

BoundNoiseModel build_crosstalk_model(const NoiseModel &model,
                                      const CrosstalkTable &table,
                                      const circuit::Circuit &circuit) {
  return Binder(model, circuit, &table, nullptr).run();
}

BoundNoiseModel inject_crosstalk(const NoiseModel &model,
                                 const CrosstalkInjection &injection,
                                 const circuit::Circuit &circuit,
                                 const CrosstalkTable *table) {
  return Binder(model, circuit, table, &injection).run();
}

} // namespace xtalk::noise
