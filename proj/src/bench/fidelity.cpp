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

#include "xtalk/bench/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "xtalk/common/error.hpp"

namespace xtalk::bench {

namespace {

void check_normalized(std::span<const double> p, const char *name) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0)
      throw InputError(std::string("hellinger: negative probability in ") + name);
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InputError(std::string("hellinger: ") + name + " is not normalized");
}

using LayoutMap = std::map<std::vector<QubitId>, double>;

LayoutMap by_layout(std::span<const FidelityRecord> records, const char *name) {
  LayoutMap out;
  for (const auto &r : records)
    if (!out.emplace(r.layout, r.fidelity).second)
      throw InputError(std::string(name) + ": duplicate layout " +
                       layout_name(r.layout));
  return out;
}

void check_same_layouts(const LayoutMap &a, const LayoutMap &b) {
  if (a.size() != b.size() ||
      !std::equal(a.begin(), a.end(), b.begin(),
                  [](const auto &x, const auto &y) { return x.first == y.first; }))
    throw InputError("record sets cover different layouts");
}

} // namespace

double hellinger_fidelity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw InputError("hellinger: distributions of different size");
  check_normalized(p, "first distribution");
  check_normalized(q, "second distribution");
  double bc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    bc += std::sqrt(p[i] * q[i]);
  return std::clamp(bc * bc, 0.0, 1.0);
}

double hellinger_fidelity(const sim::Counts &counts, std::span<const double> q) {
  const auto p = counts.distribution();
  return hellinger_fidelity(p, q);
}

std::string_view source_name(Source s) {
  switch (s) {
  case Source::MeasuredRun1:
    return "measured-run-1";
  case Source::MeasuredRun2:
    return "measured-run-2";
  case Source::ModelStandard:
    return "model-standard";
  case Source::ModelCrosstalk:
    return "model-crosstalk";
  }
  return "";
}

Source parse_source(std::string_view name) {
  for (Source s : {Source::MeasuredRun1, Source::MeasuredRun2,
                   Source::ModelStandard, Source::ModelCrosstalk})
    if (source_name(s) == name)
      return s;
  throw InputError("unknown record source '" + std::string(name) + "'");
}

std::string layout_name(std::span<const QubitId> layout) {
  std::string s;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (i > 0)
      s += '-';
    s += std::to_string(layout[i]);
  }
  return s;
}

std::vector<std::vector<QubitId>>
filter_outliers(std::span<const FidelityRecord> run1,
                std::span<const FidelityRecord> run2, double threshold) {
  const auto a = by_layout(run1, "run 1");
  const auto b = by_layout(run2, "run 2");
  check_same_layouts(a, b);
  // Absolute slack keeps differences that print as exactly the threshold
  // unflagged despite rounding.
  constexpr double kSlack = 1e-12;
  std::vector<std::vector<QubitId>> flagged;
  for (const auto &[layout, f1] : a)
    if (std::abs(f1 - b.at(layout)) > threshold + kSlack)
      flagged.push_back(layout);
  return flagged;
}

ComparisonResult compare(std::span<const FidelityRecord> measured,
                         std::span<const FidelityRecord> simulated,
                         std::span<const std::vector<QubitId>> flagged) {
  const auto a = by_layout(measured, "measured");
  const auto b = by_layout(simulated, "simulated");
  check_same_layouts(a, b);
  const std::set<std::vector<QubitId>> skip(flagged.begin(), flagged.end());
  for (const auto &l : skip)
    if (!a.count(l))
      throw InputError("flagged layout " + layout_name(l) + " not in the records");
  ComparisonResult out;
  out.flagged_layouts.assign(skip.begin(), skip.end());
  double sum = 0.0, sum_reduced = 0.0;
  std::size_t n_reduced = 0;
  for (const auto &[layout, fm] : a) {
    const double d = fm - b.at(layout);
    sum += d * d;
    if (!skip.count(layout)) {
      sum_reduced += d * d;
      ++n_reduced;
    }
  }
  out.rms = a.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(a.size()));
  out.rms_reduced =
      n_reduced == 0 ? 0.0 : std::sqrt(sum_reduced / static_cast<double>(n_reduced));
  return out;
}

nlohmann::json to_json(const ComparisonResult &c) {
  std::vector<std::string> flagged;
  for (const auto &l : c.flagged_layouts)
    flagged.push_back(layout_name(l));
  return {{"rms", c.rms}, {"rms_reduced", c.rms_reduced}, {"flagged", flagged}};
}

} // namespace xtalk::bench
