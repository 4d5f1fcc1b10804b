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

#include "xtalk/device/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>

#include "xtalk/common/error.hpp"

namespace xtalk::device {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void check(bool ok, const std::string &field, const std::string &what) {
  if (!ok)
    throw InvariantError(field, what);
}

} // namespace

DeviceSnapshot::DeviceSnapshot(std::string name, std::string timestamp,
                               std::vector<QubitCalibration> qubits,
                               std::vector<EdgeCalibration> edges)
    : name_(std::move(name)), timestamp_(std::move(timestamp)),
      qubits_(std::move(qubits)), edges_(std::move(edges)) {
  check(!qubits_.empty(), "qubits", "device has no qubits");
  const int n = static_cast<int>(qubits_.size());

  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    const auto &q = qubits_[i];
    const std::string f = "qubits[" + std::to_string(i) + "]";
    check(q.id >= 0 && q.id < n, f + ".id",
          "ids must be 0.." + std::to_string(n - 1));
    check(!seen[q.id], f + ".id", "duplicate qubit id " + std::to_string(q.id));
    seen[q.id] = true;
    check(q.t1_us > 0.0, f + ".t1_us", "must be positive");
    check(q.t2_us > 0.0, f + ".t2_us", "must be positive");
    check(q.t2_us <= 2.0 * q.t1_us, f + ".t2_us", "must not exceed 2*t1_us");
    check(is_probability(q.readout_p0_given_1), f + ".readout_p0_given_1",
          "not a probability");
    check(is_probability(q.readout_p1_given_0), f + ".readout_p1_given_0",
          "not a probability");
    check(is_probability(q.sq_error), f + ".sq_error", "not in [0,1]");
    check(q.sq_duration_ns >= 0.0 && std::isfinite(q.sq_duration_ns),
          f + ".sq_duration_ns", "must be finite and non-negative");
    check(std::isfinite(q.frequency_ghz), f + ".frequency_ghz", "not finite");
    check(std::isfinite(q.anharmonicity_ghz), f + ".anharmonicity_ghz",
          "not finite");
  }
  std::sort(qubits_.begin(), qubits_.end(),
            [](const auto &a, const auto &b) { return a.id < b.id; });

  adjacency_.assign(n, {});
  edge_index_.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto &e = edges_[i];
    const std::string f = "edges[" + std::to_string(i) + "]";
    check(e.drive >= 0 && e.drive < n, f + ".drive", "unknown qubit");
    check(e.target >= 0 && e.target < n, f + ".target", "unknown qubit");
    check(e.drive != e.target, f, "drive equals target");
    check(edge_index_[e.drive][e.target] < 0, f,
          "duplicate coupling " + std::to_string(e.drive) + "-" +
              std::to_string(e.target));
    check(is_probability(e.cx_error), f + ".cx_error", "not in [0,1]");
    check(e.cx_duration_ns >= 0.0 && std::isfinite(e.cx_duration_ns),
          f + ".cx_duration_ns", "must be finite and non-negative");
    edge_index_[e.drive][e.target] = static_cast<int>(i);
    edge_index_[e.target][e.drive] = static_cast<int>(i);
    adjacency_[e.drive].push_back(e.target);
    adjacency_[e.target].push_back(e.drive);
  }
  for (auto &nb : adjacency_)
    std::sort(nb.begin(), nb.end());

  std::vector<bool> reached(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  reached[0] = true;
  int count = 1;
  while (!frontier.empty()) {
    int q = frontier.front();
    frontier.pop();
    for (int nb : adjacency_[q])
      if (!reached[nb]) {
        reached[nb] = true;
        ++count;
        frontier.push(nb);
      }
  }
  check(count == n, "edges", "coupling graph is not connected");
}

const QubitCalibration &DeviceSnapshot::qubit(QubitId q) const {
  if (q < 0 || q >= num_qubits())
    throw InputError("unknown qubit " + std::to_string(q));
  return qubits_[q];
}

const std::vector<QubitId> &DeviceSnapshot::neighbors(QubitId q) const {
  if (q < 0 || q >= num_qubits())
    throw InputError("unknown qubit " + std::to_string(q));
  return adjacency_[q];
}

bool DeviceSnapshot::adjacent(QubitId a, QubitId b) const {
  return find_edge(a, b) != nullptr;
}

const EdgeCalibration *DeviceSnapshot::find_edge(QubitId a, QubitId b) const {
  if (a < 0 || b < 0 || a >= num_qubits() || b >= num_qubits())
    return nullptr;
  int idx = edge_index_[a][b];
  return idx < 0 ? nullptr : &edges_[idx];
}

const EdgeCalibration *DeviceSnapshot::native_edge(QubitId drive,
                                                   QubitId target) const {
  const auto *e = find_edge(drive, target);
  return (e && e->drive == drive) ? e : nullptr;
}

std::vector<std::pair<QubitId, QubitId>>
DeviceSnapshot::undirected_edges() const {
  std::vector<std::pair<QubitId, QubitId>> out;
  out.reserve(edges_.size());
  for (const auto &e : edges_)
    out.emplace_back(std::min(e.drive, e.target), std::max(e.drive, e.target));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Accepts numbers, or the strings "inf"/"infinity" for unbounded times.
double number(const nlohmann::json &obj, const char *key,
              const std::string &field) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(field + "." + key + ": missing");
  if (it->is_number())
    return it->get<double>();
  if (it->is_string()) {
    auto s = it->get<std::string>();
    if (s == "inf" || s == "infinity")
      return std::numeric_limits<double>::infinity();
  }
  throw ParseError(field + "." + key + ": expected a number");
}

int integer(const nlohmann::json &obj, const char *key,
            const std::string &field) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer())
    throw ParseError(field + "." + key + ": expected an integer");
  return it->get<int>();
}

} // namespace

DeviceSnapshot snapshot_from_json(const nlohmann::json &doc) {
  if (!doc.is_object())
    throw ParseError("calibration: top level must be an object");
  std::string name = doc.value("name", std::string{});
  std::string timestamp = doc.value("timestamp", std::string{});

  auto qs = doc.find("qubits");
  if (qs == doc.end() || !qs->is_array())
    throw ParseError("qubits: expected an array");
  std::vector<QubitCalibration> qubits;
  for (std::size_t i = 0; i < qs->size(); ++i) {
    const auto &q = (*qs)[i];
    const std::string f = "qubits[" + std::to_string(i) + "]";
    if (!q.is_object())
      throw ParseError(f + ": expected an object");
    QubitCalibration c;
    c.id = integer(q, "id", f);
    c.frequency_ghz = number(q, "frequency_ghz", f);
    c.anharmonicity_ghz = number(q, "anharmonicity_ghz", f);
    c.t1_us = number(q, "t1_us", f);
    c.t2_us = number(q, "t2_us", f);
    c.readout_p0_given_1 = number(q, "readout_p0_given_1", f);
    c.readout_p1_given_0 = number(q, "readout_p1_given_0", f);
    c.sq_error = number(q, "sq_error", f);
    c.sq_duration_ns = number(q, "sq_duration_ns", f);
    qubits.push_back(c);
  }

  std::vector<EdgeCalibration> edges;
  auto es = doc.find("edges");
  if (es != doc.end()) {
    if (!es->is_array())
      throw ParseError("edges: expected an array");
    for (std::size_t i = 0; i < es->size(); ++i) {
      const auto &e = (*es)[i];
      const std::string f = "edges[" + std::to_string(i) + "]";
      if (!e.is_object())
        throw ParseError(f + ": expected an object");
      EdgeCalibration c;
      c.drive = integer(e, "drive", f);
      c.target = integer(e, "target", f);
      c.cx_error = number(e, "cx_error", f);
      c.cx_duration_ns = number(e, "cx_duration_ns", f);
      edges.push_back(c);
    }
  }
  return DeviceSnapshot(std::move(name), std::move(timestamp),
                        std::move(qubits), std::move(edges));
}

DeviceSnapshot load_snapshot(std::istream &in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("calibration: ") + e.what());
  }
  return snapshot_from_json(doc);
}

DeviceSnapshot load_snapshot_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open calibration file '" + path + "'");
  return load_snapshot(in);
}

namespace {
nlohmann::json time_value(double t) {
  if (std::isinf(t))
    return "inf";
  return t;
}
} // namespace

nlohmann::json to_json(const DeviceSnapshot &snapshot) {
  nlohmann::json doc;
  doc["name"] = snapshot.name();
  doc["timestamp"] = snapshot.timestamp();
  doc["qubits"] = nlohmann::json::array();
  for (const auto &q : snapshot.qubits())
    doc["qubits"].push_back({{"id", q.id},
                             {"frequency_ghz", q.frequency_ghz},
                             {"anharmonicity_ghz", q.anharmonicity_ghz},
                             {"t1_us", time_value(q.t1_us)},
                             {"t2_us", time_value(q.t2_us)},
                             {"readout_p0_given_1", q.readout_p0_given_1},
                             {"readout_p1_given_0", q.readout_p1_given_0},
                             {"sq_error", q.sq_error},
                             {"sq_duration_ns", q.sq_duration_ns}});
  doc["edges"] = nlohmann::json::array();
  for (const auto &e : snapshot.edges())
    doc["edges"].push_back({{"drive", e.drive},
                            {"target", e.target},
                            {"cx_error", e.cx_error},
                            {"cx_duration_ns", e.cx_duration_ns}});
  return doc;
}

} // namespace xtalk::device
