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

#include <benchmark/benchmark.h>

#include <vector>

#include "xtalk/common/rng.hpp"
#include "xtalk/noise/channels.hpp"
#include "xtalk/simulator/gates.hpp"
#include "xtalk/simulator/kernels.hpp"

namespace {

using namespace xtalk;
namespace k = sim::kernels;

std::vector<cplx> random_buffer(std::size_t size) {
  Rng rng(5);
  std::vector<cplx> v(size);
  for (auto &x : v)
    x = {rng.uniform(), rng.uniform()};
  return v;
}

std::vector<int> targets(int n, int arity) {
  const std::vector<int> spread = {n - 1, 0, n / 2};
  return {spread.begin(), spread.begin() + arity};
}

template <auto Kernel> void superop(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const int arity = static_cast<int>(state.range(1));
  auto rho = random_buffer(std::size_t{1} << (2 * n));
  const auto q = targets(n, arity);
  const Matrix s = noise::thermal_relaxation(50.0, 40.0, 300.0).superoperator();
  const Matrix s2 = noise::depolarizing_weight(arity, 0.01).superoperator();
  const Matrix &op = arity == 1 ? s : s2;
  for (auto _ : state) {
    Kernel(rho, n, q, op);
    benchmark::DoNotOptimize(rho.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rho.size()));
}

template <auto Kernel> void depolarizing(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const int arity = static_cast<int>(state.range(1));
  auto rho = random_buffer(std::size_t{1} << (2 * n));
  const auto q = targets(n, arity);
  for (auto _ : state) {
    Kernel(rho, n, q, 0.01);
    benchmark::DoNotOptimize(rho.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rho.size()));
}

template <auto Kernel> void unitary(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  auto psi = random_buffer(std::size_t{1} << n);
  const auto q = targets(n, 2);
  const Matrix u = sim::gate_matrix(circuit::Gate::cx(0, 1));
  for (auto _ : state) {
    Kernel(psi, n, q, u);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.size()));
}

void density_args(benchmark::internal::Benchmark *b) {
  for (int n : {4, 6, 8, 10})
    for (int arity : {1, 2, 3})
      b->Args({n, arity});
}

void state_args(benchmark::internal::Benchmark *b) {
  for (int n : {10, 16, 20})
    b->Args({n});
}

} // namespace

BENCHMARK(superop<k::serial::apply_superop>)->Name("superop/serial")->Apply(density_args);
BENCHMARK(superop<k::omp::apply_superop>)->Name("superop/omp")->Apply(density_args);
BENCHMARK(depolarizing<k::serial::apply_depolarizing>)->Name("depolarizing/serial")->Apply(density_args);
BENCHMARK(depolarizing<k::omp::apply_depolarizing>)->Name("depolarizing/omp")->Apply(density_args);
BENCHMARK(unitary<k::serial::apply_unitary>)->Name("unitary/serial")->Apply(state_args);
BENCHMARK(unitary<k::omp::apply_unitary>)->Name("unitary/omp")->Apply(state_args);
BENCHMARK_MAIN();
