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
#include <initializer_list>
#include <random>
#include <string_view>

namespace xtalk {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; all derived quantities (uniform doubles,
// bounded integers) are computed here rather than through <random>
// distributions, whose algorithms vary between standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Seed of a named sub-stream. Streams derived from different tag lists are
  // statistically independent; identical tag lists give identical streams.
  static std::uint64_t derive(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> tags);
  static std::uint64_t tag(std::string_view name);

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace xtalk
