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

#include "xtalk/backend/program.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "xtalk/common/error.hpp"
#include "xtalk/common/rng.hpp"
#include "xtalk/simulator/gates.hpp"
#include "xtalk/simulator/kernels.hpp"
#include "xtalk/simulator/statevector.hpp"

namespace xtalk::backend {

namespace {

struct UnionFind {
  std::map<QubitId, QubitId> parent;
  QubitId find(QubitId q) {
    auto it = parent.try_emplace(q, q).first;
    if (it->second == q)
      return q;
    return it->second = find(it->second);
  }
  void unite(QubitId a, QubitId b) { parent[find(a)] = find(b); }
};

Matrix op_superop(const noise::NoisyOp &op) {
  if (op.kind == noise::NoisyOp::Kind::Gate)
    return sim::kernels::superop_from_unitary(sim::gate_matrix(op.gate));
  return op.channel->superoperator();
}

// Superoperator `s` on positions `sub` of a `width`-qubit block, as a
// superoperator on the whole block.
Matrix embed_superop(const Matrix &s, const std::vector<int> &sub, int width) {
  const Eigen::Index d = Eigen::Index{1} << width;
  Matrix out(d * d, d * d);
  std::vector<cplx> basis(static_cast<std::size_t>(d * d));
  for (Eigen::Index col = 0; col < d * d; ++col) {
    std::fill(basis.begin(), basis.end(), cplx{0.0});
    basis[static_cast<std::size_t>(col)] = 1.0;
    sim::kernels::serial::apply_superop(basis, width, sub, s);
    for (Eigen::Index row = 0; row < d * d; ++row)
      out(row, col) = basis[static_cast<std::size_t>(row)];
  }
  return out;
}

// Positions of `inner` within `outer`, or empty when not a subset.
std::vector<int> positions(const std::vector<int> &inner,
                           const std::vector<int> &outer) {
  std::vector<int> pos;
  for (int q : inner) {
    auto it = std::find(outer.begin(), outer.end(), q);
    if (it == outer.end())
      return {};
    pos.push_back(static_cast<int>(it - outer.begin()));
  }
  return pos;
}

// Fuses into the most recent step on these qubits when it covers them, no
// later step touches them, and one matrix product is cheaper than applying
// the step to the component's density matrix.
void append_step(Component &c, std::vector<int> &last_step,
                 std::vector<int> qubits, Matrix superop) {
  const int last = last_step[qubits[0]];
  bool fusible = last >= 0;
  for (int q : qubits)
    fusible = fusible && last_step[q] == last;
  if (fusible) {
    Step &prev = c.steps[static_cast<std::size_t>(last)];
    const auto pos = positions(qubits, prev.qubits);
    const double width = static_cast<double>(prev.qubits.size());
    const double n = static_cast<double>(c.qubits.size());
    const double fuse_cost = std::pow(4.0, 3.0 * width);
    const double apply_cost = std::pow(4.0, n + static_cast<double>(qubits.size()));
    if (!pos.empty() && fuse_cost < apply_cost) {
      if (qubits == prev.qubits)
        prev.superop = superop * prev.superop;
      else
        prev.superop =
            embed_superop(superop, pos, static_cast<int>(width)) * prev.superop;
      return;
    }
  }
  for (int q : qubits)
    last_step[q] = static_cast<int>(c.steps.size());
  c.steps.push_back({std::move(qubits), std::move(superop)});
}

} // namespace

Program compile(const noise::BoundNoiseModel &model) {
  UnionFind uf;
  for (const auto &op : model.ops) {
    for (QubitId q : op.qubits)
      uf.find(q);
    for (std::size_t j = 1; j < op.qubits.size(); ++j)
      uf.unite(op.qubits[0], op.qubits[j]);
  }
  for (QubitId q : model.readout_order)
    uf.find(q);

  std::map<QubitId, std::vector<QubitId>> groups;
  for (const auto &[q, p] : uf.parent)
    groups[uf.find(q)].push_back(q);

  Program program;
  program.readout_order = model.readout_order;
  program.readout = model.readout;
  std::map<QubitId, std::pair<std::size_t, int>> where; // component, position
  std::vector<std::vector<QubitId>> members;
  for (auto &[root, qs] : groups)
    members.push_back(qs);
  std::sort(members.begin(), members.end());
  for (auto &qs : members) {
    std::sort(qs.begin(), qs.end());
    if (static_cast<int>(qs.size()) > kMaxComponentQubits)
      throw InputError("circuit couples " + std::to_string(qs.size()) +
                       " qubits; the simulator handles at most " +
                       std::to_string(kMaxComponentQubits));
    for (std::size_t j = 0; j < qs.size(); ++j)
      where[qs[j]] = {program.components.size(), static_cast<int>(j)};
    program.components.push_back({qs, {}, {}});
  }

  std::vector<std::vector<int>> last_step(program.components.size());
  for (std::size_t c = 0; c < program.components.size(); ++c)
    last_step[c].assign(program.components[c].qubits.size(), -1);
  std::map<const noise::KrausChannel *, Matrix> channel_cache;
  for (const auto &op : model.ops) {
    const auto comp = where.at(op.qubits[0]).first;
    std::vector<int> local;
    for (QubitId q : op.qubits)
      local.push_back(where.at(q).second);
    Matrix s;
    if (op.kind == noise::NoisyOp::Kind::Channel) {
      auto it = channel_cache.find(op.channel.get());
      if (it == channel_cache.end())
        it = channel_cache.emplace(op.channel.get(), op.channel->superoperator())
                 .first;
      s = it->second;
    } else {
      s = op_superop(op);
    }
    append_step(program.components[comp], last_step[comp], std::move(local),
                std::move(s));
  }
  for (std::size_t k = 0; k < program.readout_order.size(); ++k)
    program.components[where.at(program.readout_order[k]).first]
        .readout_bits.push_back(static_cast<int>(k));
  return program;
}

sim::DensityMatrix execute(const Component &component) {
  const int n = static_cast<int>(component.qubits.size());
  sim::DensityMatrix rho(n);
  for (const auto &step : component.steps)
    sim::kernels::apply_superop(rho.data(), n, step.qubits, step.superop);
  return rho;
}

namespace {

std::vector<int> local_readout(const Program &program, const Component &c) {
  std::vector<int> local;
  for (int k : c.readout_bits) {
    const QubitId q = program.readout_order[static_cast<std::size_t>(k)];
    local.push_back(static_cast<int>(
        std::find(c.qubits.begin(), c.qubits.end(), q) - c.qubits.begin()));
  }
  return local;
}

} // namespace

std::vector<double> component_distribution(const Program &program,
                                           const Component &component) {
  return sim::marginalize(execute(component).diagonal(),
                          local_readout(program, component));
}

std::vector<double> distribution(const Program &program) {
  const std::size_t nbits = program.readout_order.size();
  if (nbits > 24)
    throw InputError("readout of more than 24 bits is not supported");
  std::vector<double> out{1.0};
  std::vector<int> order; // readout bit of each position in `out`
  for (const auto &c : program.components) {
    if (c.readout_bits.empty())
      continue;
    const auto marg = component_distribution(program, c);
    std::vector<double> next(out.size() * marg.size());
    for (std::size_t a = 0; a < marg.size(); ++a)
      for (std::size_t b = 0; b < out.size(); ++b)
        next[a * out.size() + b] = marg[a] * out[b];
    out = std::move(next);
    order.insert(order.end(), c.readout_bits.begin(), c.readout_bits.end());
  }
  std::vector<double> probs(std::size_t{1} << nbits, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t k = 0;
    for (std::size_t b = 0; b < order.size(); ++b)
      k |= ((i >> b) & 1) << order[b];
    probs[k] += out[i];
  }
  return sim::apply_readout(std::move(probs), program.readout);
}

sim::Counts sample(const Program &program, std::int64_t shots,
                   std::uint64_t seed) {
  const int nbits = static_cast<int>(program.readout_order.size());
  if (nbits > 63)
    throw InputError("readout of more than 63 bits is not supported");
  std::vector<std::uint64_t> joint(static_cast<std::size_t>(shots), 0);
  for (const auto &c : program.components) {
    if (c.readout_bits.empty())
      continue;
    const auto marg = component_distribution(program, c);
    std::vector<sim::ReadoutError> readout;
    for (int k : c.readout_bits)
      readout.push_back(program.readout[static_cast<std::size_t>(k)]);
    std::uint64_t stream = Rng::derive(seed, {Rng::tag("component")});
    for (QubitId q : c.qubits)
      stream = Rng::derive(stream, {static_cast<std::uint64_t>(q)});
    const auto local =
        sim::sample_shots(marg, static_cast<int>(c.readout_bits.size()), shots,
                          readout, stream);
    for (std::size_t s = 0; s < local.size(); ++s)
      for (std::size_t b = 0; b < c.readout_bits.size(); ++b)
        joint[s] |= ((local[s] >> b) & 1) << c.readout_bits[b];
  }
  sim::Counts counts;
  counts.num_bits = nbits;
  counts.shots = shots;
  for (auto outcome : joint)
    ++counts.counts[outcome];
  return counts;
}

} // namespace xtalk::backend
