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

#include "xtalk/bench/sweep.hpp"

#include <cstdio>
#include <map>
#include <regex>
#include <set>

#include "xtalk/bench/ladder.hpp"
#include "xtalk/circuit/transforms.hpp"
#include "xtalk/common/error.hpp"
#include "xtalk/common/parallel.hpp"
#include "xtalk/common/rng.hpp"
#include "xtalk/device/topology.hpp"
#include "xtalk/simulator/statevector.hpp"

namespace xtalk::bench {

TwirlSpec parse_twirl(const std::string &text) {
  static const std::regex re(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw InputError("twirl must look like RxS, e.g. 100x100; got '" + text +
                     "'");
  TwirlSpec t{std::stoi(m[1]), std::stoll(m[2])};
  if (t.randomizations < 1 || t.shots_each < 1)
    throw InputError("twirl randomizations and shots must be positive");
  return t;
}

namespace {

std::uint64_t layout_stream(std::uint64_t seed, std::span<const QubitId> layout) {
  std::uint64_t s = Rng::derive(seed, {Rng::tag("sweep-layout")});
  for (QubitId q : layout)
    s = Rng::derive(s, {static_cast<std::uint64_t>(q)});
  return s;
}

} // namespace

std::vector<FidelityRecord> sweep(const circuit::Circuit &templ,
                                  std::span<const std::vector<QubitId>> layouts,
                                  const backend::SimulatedBackend &backend,
                                  Source source, const SweepOptions &options) {
  const auto &snap = backend.snapshot();
  const auto ideal = sim::exact_distribution(templ);
  const auto triplets = device::extract_triplets(snap);
  std::vector<circuit::Circuit> placed;
  for (const auto &layout : layouts)
    placed.push_back(circuit::map_to_native(place_on_layout(templ, layout, snap), snap));

  std::vector<FidelityRecord> out(layouts.size());
  parallel_for(static_cast<std::int64_t>(layouts.size()), [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto &layout = layouts[idx];
    const std::uint64_t stream = layout_stream(options.seed, layout);
    double f = 0.0;
    if (options.twirl.enabled()) {
      sim::Counts total;
      for (int k = 0; k < options.twirl.randomizations; ++k) {
        const auto kk = static_cast<std::uint64_t>(k);
        auto [twirled, record] = circuit::randomized_compile(
            placed[idx], snap, triplets,
            Rng::derive(stream, {Rng::tag("twirl"), kk}));
        auto counts = backend.run(twirled, options.twirl.shots_each,
                                  Rng::derive(stream, {Rng::tag("shots"), kk}));
        if (k == 0)
          total = std::move(counts);
        else
          total.merge(counts);
      }
      f = hellinger_fidelity(total, ideal);
    } else if (options.shots > 0) {
      f = hellinger_fidelity(
          backend.run(placed[idx], options.shots,
                      Rng::derive(stream, {Rng::tag("shots")})),
          ideal);
    } else {
      f = hellinger_fidelity(backend.distribution(placed[idx]), ideal);
    }
    out[idx] = {layout, f, source};
  });
  return out;
}

std::string records_csv(std::span<const FidelityRecord> records,
                        std::span<const std::vector<QubitId>> flagged) {
  const std::set<std::vector<QubitId>> skip(flagged.begin(), flagged.end());
  std::string s = "layout,source,fidelity,flagged\n";
  char buf[64];
  for (const auto &r : records) {
    std::snprintf(buf, sizeof buf, "%.12f", r.fidelity);
    s += layout_name(r.layout) + "," + std::string(source_name(r.source)) + "," +
         buf + "," + (skip.count(r.layout) ? "true" : "false") + "\n";
  }
  return s;
}

nlohmann::json plot_data(std::span<const FidelityRecord> measured,
                         std::span<const FidelityRecord> simulated,
                         std::span<const std::vector<QubitId>> flagged) {
  const std::set<std::vector<QubitId>> skip(flagged.begin(), flagged.end());
  std::map<std::vector<QubitId>, double> sim_by_layout;
  for (const auto &r : simulated)
    sim_by_layout[r.layout] = r.fidelity;
  nlohmann::json points = nlohmann::json::array();
  for (const auto &r : measured) {
    const auto it = sim_by_layout.find(r.layout);
    if (it == sim_by_layout.end())
      throw InputError("plot data: layout " + layout_name(r.layout) +
                       " missing from simulated records");
    points.push_back({{"layout", layout_name(r.layout)},
                      {"x", r.fidelity},
                      {"y", it->second},
                      {"flagged", skip.count(r.layout) > 0}});
  }
  return {{"x_source", measured.empty() ? "" : source_name(measured.front().source)},
          {"y_source",
           simulated.empty() ? "" : source_name(simulated.front().source)},
          {"points", points}};
}

} // namespace xtalk::bench
