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

#include "xtalk/rb/clifford_group.hpp"

#include <queue>
#include <tuple>

#include "xtalk/common/error.hpp"

namespace xtalk::rb {

using circuit::Gate;
using circuit::GateKind;

namespace {

struct Generator {
  Gate gate;
  sim::CliffordTableau tableau;
  int cost;
};

std::vector<Generator> generators(int n) {
  std::vector<Generator> out;
  const GateKind kinds[] = {GateKind::H, GateKind::S, GateKind::SDG,
                            GateKind::X, GateKind::Y, GateKind::Z,
                            GateKind::SX};
  for (int q = 0; q < n; ++q)
    for (GateKind k : kinds) {
      const Gate g = Gate::single(k, q);
      out.push_back({g, sim::CliffordTableau::from_gate(g, n),
                     circuit::is_virtual(g) ? 1 : 10});
    }
  if (n == 2) {
    const Gate g = Gate::cx(0, 1);
    out.push_back({g, sim::CliffordTableau::from_gate(g, n), 1000});
  }
  return out;
}

} // namespace

CliffordGroup::CliffordGroup(int n) : n_(n) {
  if (n != 1 && n != 2)
    throw InputError("Clifford group available for 1 or 2 qubits only");
  const auto gens = generators(n);

  using Entry = std::tuple<int, std::size_t, std::size_t>; // cost, order, slot
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::vector<CliffordElement> pending;
  std::vector<int> cost;
  std::unordered_map<std::uint64_t, std::size_t> slot_of;
  std::vector<char> done;

  auto offer = [&](CliffordElement e, int c) {
    const auto key = e.tableau.key();
    const auto it = slot_of.find(key);
    if (it != slot_of.end()) {
      if (done[it->second] || cost[it->second] <= c)
        return;
      pending[it->second] = std::move(e);
      cost[it->second] = c;
      queue.emplace(c, queue.size() + pending.size(), it->second);
      return;
    }
    slot_of.emplace(key, pending.size());
    pending.push_back(std::move(e));
    cost.push_back(c);
    done.push_back(0);
    queue.emplace(c, pending.size(), pending.size() - 1);
  };

  CliffordElement id{sim::CliffordTableau::identity(n), {}, 0,
                     std::vector<int>(n, 0)};
  offer(std::move(id), 0);
  while (!queue.empty()) {
    const auto [c, order, slot] = queue.top();
    queue.pop();
    if (done[slot] || c != cost[slot])
      continue;
    done[slot] = 1;
    index_.emplace(pending[slot].tableau.key(), elements_.size());
    elements_.push_back(pending[slot]);
    const CliffordElement &cur = elements_.back();
    for (const auto &g : gens) {
      CliffordElement next{cur.tableau.then(g.tableau), cur.gates, cur.cx_count,
                           cur.physical_1q};
      next.gates.push_back(g.gate);
      if (g.gate.kind == GateKind::CX)
        ++next.cx_count;
      else if (!circuit::is_virtual(g.gate))
        ++next.physical_1q[g.gate.qubits[0]];
      offer(std::move(next), c + g.cost);
    }
  }
}

const CliffordGroup &CliffordGroup::get(int n) {
  if (n == 1) {
    static const CliffordGroup one(1);
    return one;
  }
  if (n == 2) {
    static const CliffordGroup two(2);
    return two;
  }
  throw InputError("Clifford group available for 1 or 2 qubits only");
}

std::optional<std::size_t>
CliffordGroup::find(const sim::CliffordTableau &t) const {
  if (t.num_qubits() != n_)
    return std::nullopt;
  const auto it = index_.find(t.key());
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

double CliffordGroup::mean_cx() const {
  double sum = 0.0;
  for (const auto &e : elements_)
    sum += e.cx_count;
  return sum / static_cast<double>(elements_.size());
}

double CliffordGroup::mean_physical_1q(int qubit) const {
  double sum = 0.0;
  for (const auto &e : elements_)
    sum += e.physical_1q[qubit];
  return sum / static_cast<double>(elements_.size());
}

const CliffordElement &sample_clifford(int n, Rng &rng) {
  const auto &group = CliffordGroup::get(n);
  return group.element(group.sample(rng));
}

} // namespace xtalk::rb
