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

#include "xtalk/device/topology.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "xtalk/common/error.hpp"

namespace xtalk::device {

std::string to_string(const Triplet &t) {
  return "([" + std::to_string(t.drive) + ", " + std::to_string(t.target) +
         "], [" + std::to_string(t.spectator) + "])";
}

std::vector<Triplet> extract_triplets(const DeviceSnapshot &snapshot) {
  std::vector<Triplet> out;
  for (const auto &e : snapshot.edges())
    for (QubitId s : snapshot.neighbors(e.drive))
      if (s != e.target)
        out.push_back({e.drive, e.target, s});
  std::sort(out.begin(), out.end());
  return out;
}

void check_triplet(const Triplet &t, const DeviceSnapshot &snapshot) {
  const std::string f = "triplet " + to_string(t);
  if (!snapshot.native_edge(t.drive, t.target))
    throw InvariantError(f, "pair is not a calibrated drive->target edge");
  if (t.spectator == t.drive || t.spectator == t.target)
    throw InvariantError(f, "spectator coincides with the pair");
  if (!snapshot.adjacent(t.spectator, t.drive))
    throw InvariantError(f, "spectator is not adjacent to the drive qubit");
}

bool triplets_conflict(const Triplet &a, const Triplet &b,
                       const DeviceSnapshot &snapshot) {
  const auto qa = a.qubits();
  const auto qb = b.qubits();
  for (QubitId x : qa)
    for (QubitId y : qb)
      if (x == y)
        return true;
  for (QubitId y : qb)
    if (snapshot.adjacent(a.drive, y))
      return true;
  for (QubitId x : qa)
    if (snapshot.adjacent(b.drive, x))
      return true;
  return false;
}

std::vector<Batch> schedule_batches(std::span<const Triplet> triplets,
                                    const DeviceSnapshot &snapshot) {
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<int> color(sorted.size(), -1);
  int num_colors = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::vector<bool> used(num_colors + 1, false);
    for (std::size_t j = 0; j < i; ++j)
      if (triplets_conflict(sorted[i], sorted[j], snapshot))
        used[color[j]] = true;
    int c = 0;
    while (used[c])
      ++c;
    color[i] = c;
    num_colors = std::max(num_colors, c + 1);
  }
  std::vector<Batch> batches(num_colors);
  for (std::size_t i = 0; i < sorted.size(); ++i)
    batches[color[i]].push_back(sorted[i]);
  return batches;
}

std::vector<BatchViolation> validate_batches(std::span<const Batch> batches,
                                             const DeviceSnapshot &snapshot,
                                             std::span<const Triplet> expected) {
  using Kind = BatchViolation::Kind;
  std::vector<BatchViolation> out;
  std::map<Triplet, int> seen;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const auto &batch = batches[b];
    for (std::size_t i = 0; i < batch.size(); ++i) {
      try {
        check_triplet(batch[i], snapshot);
      } catch (const InvariantError &e) {
        out.push_back({Kind::InvalidTriplet, static_cast<int>(b), {batch[i]},
                       e.what()});
      }
      for (std::size_t j = i + 1; j < batch.size(); ++j)
        if (triplets_conflict(batch[i], batch[j], snapshot))
          out.push_back({Kind::Conflict, static_cast<int>(b),
                         {batch[i], batch[j]},
                         to_string(batch[i]) + " and " + to_string(batch[j]) +
                             " are not separated"});
      if (++seen[batch[i]] == 2)
        out.push_back({Kind::Duplicate, static_cast<int>(b), {batch[i]},
                       to_string(batch[i]) + " scheduled more than once"});
    }
  }
  std::set<Triplet> wanted(expected.begin(), expected.end());
  for (const auto &t : wanted)
    if (!seen.count(t))
      out.push_back({Kind::Missing, -1, {t}, to_string(t) + " not scheduled"});
  for (const auto &[t, n] : seen)
    if (!wanted.count(t))
      out.push_back({Kind::Unexpected, -1, {t},
                     to_string(t) + " is not an expected triplet"});
  return out;
}

std::vector<BatchViolation> validate_batches(std::span<const Batch> batches,
                                             const DeviceSnapshot &snapshot) {
  auto expected = extract_triplets(snapshot);
  return validate_batches(batches, snapshot, expected);
}

namespace {

void extend_paths(const DeviceSnapshot &snapshot, std::vector<QubitId> &path,
                  std::vector<char> &on_path, int length,
                  std::vector<std::vector<QubitId>> &out) {
  if (static_cast<int>(path.size()) == length) {
    out.push_back(path);
    return;
  }
  for (QubitId nb : snapshot.neighbors(path.back())) {
    if (on_path[nb])
      continue;
    on_path[nb] = 1;
    path.push_back(nb);
    extend_paths(snapshot, path, on_path, length, out);
    path.pop_back();
    on_path[nb] = 0;
  }
}

} // namespace

std::vector<std::vector<QubitId>>
enumerate_chains(const DeviceSnapshot &snapshot, int length,
                 ChainOrientation orientation) {
  const int n = snapshot.num_qubits();
  if (length < 1 || length > n)
    throw InputError("chain length " + std::to_string(length) +
                     " outside [1, " + std::to_string(n) + "]");

  std::vector<std::vector<std::vector<QubitId>>> per_start(n);
#pragma omp parallel for schedule(dynamic)
  for (int start = 0; start < n; ++start) {
    std::vector<QubitId> path{start};
    std::vector<char> on_path(n, 0);
    on_path[start] = 1;
    extend_paths(snapshot, path, on_path, length, per_start[start]);
  }

  std::vector<std::vector<QubitId>> out;
  for (auto &paths : per_start)
    for (auto &p : paths) {
      if (orientation == ChainOrientation::Undirected) {
        std::vector<QubitId> rev(p.rbegin(), p.rend());
        if (rev < p)
          continue;
      }
      out.push_back(std::move(p));
    }
  std::sort(out.begin(), out.end());
  return out;
}

Triplet triplet_from_json(const nlohmann::json &obj, const std::string &field) {
  if (!obj.is_object())
    throw ParseError(field + ": expected an object");
  auto pair = obj.find("pair");
  auto spec = obj.find("spectator");
  if (pair == obj.end() || !pair->is_array() || pair->size() != 2 ||
      !(*pair)[0].is_number_integer() || !(*pair)[1].is_number_integer())
    throw ParseError(field + ".pair: expected [drive, target]");
  if (spec == obj.end() || !spec->is_number_integer())
    throw ParseError(field + ".spectator: expected an integer");
  return {(*pair)[0].get<int>(), (*pair)[1].get<int>(), spec->get<int>()};
}

nlohmann::json triplet_to_json(const Triplet &t) {
  return {{"pair", {t.drive, t.target}}, {"spectator", t.spectator}};
}

std::vector<Batch> batches_from_json(const nlohmann::json &doc) {
  if (!doc.is_array())
    throw ParseError("batches: expected an array of arrays");
  std::vector<Batch> out;
  for (std::size_t b = 0; b < doc.size(); ++b) {
    if (!doc[b].is_array())
      throw ParseError("batches[" + std::to_string(b) + "]: expected an array");
    Batch batch;
    for (std::size_t i = 0; i < doc[b].size(); ++i)
      batch.push_back(triplet_from_json(doc[b][i], "batches[" +
                                                      std::to_string(b) + "][" +
                                                      std::to_string(i) + "]"));
    std::sort(batch.begin(), batch.end());
    out.push_back(std::move(batch));
  }
  return out;
}

std::vector<Batch> load_batches_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open batch file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("batches: ") + e.what());
  }
  return batches_from_json(doc);
}

nlohmann::json batches_to_json(std::span<const Batch> batches) {
  auto doc = nlohmann::json::array();
  for (const auto &batch : batches) {
    auto arr = nlohmann::json::array();
    for (const auto &t : batch)
      arr.push_back(triplet_to_json(t));
    doc.push_back(std::move(arr));
  }
  return doc;
}

} // namespace xtalk::device
