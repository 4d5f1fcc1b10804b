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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "fixtures.hpp"
#include "xtalk/backend/backend.hpp"
#include "xtalk/bench/fidelity.hpp"
#include "xtalk/bench/ladder.hpp"
#include "xtalk/bench/sweep.hpp"
#include "xtalk/circuit/transforms.hpp"
#include "xtalk/noise/channels.hpp"
#include "xtalk/noise/model.hpp"
#include "xtalk/rb/characterize.hpp"
#include "xtalk/rb/clifford_group.hpp"

using namespace xtalk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// One-sided sign test: probability of at least k successes out of n fair
// coin flips.
double sign_test_p(int k, int n) {
  if (n == 0)
    return 1.0;
  if (k == 0)
    return 1.0;
  const boost::math::binomial_distribution<double> b(n, 0.5);
  return boost::math::cdf(boost::math::complement(b, k - 1));
}

Matrix apply_kraus(const noise::KrausChannel &ch, const Matrix &rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto &e : ch.operators)
    out += e * rho * e.adjoint();
  return out;
}

// Independent chain count: depth-first search over vertex sequences.
std::set<std::vector<QubitId>> brute_force_chains(const device::DeviceSnapshot &s,
                                                  int length) {
  std::set<std::vector<QubitId>> out;
  std::vector<QubitId> path;
  std::vector<bool> used(static_cast<std::size_t>(s.num_qubits()), false);
  std::function<void()> grow = [&] {
    if (static_cast<int>(path.size()) == length) {
      out.insert(path);
      return;
    }
    for (QubitId q = 0; q < s.num_qubits(); ++q) {
      if (used[static_cast<std::size_t>(q)])
        continue;
      if (!path.empty() && s.find_edge(path.back(), q) == nullptr)
        continue;
      used[static_cast<std::size_t>(q)] = true;
      path.push_back(q);
      grow();
      path.pop_back();
      used[static_cast<std::size_t>(q)] = false;
    }
  };
  grow();
  return out;
}

Outcome triplet_count() {
  const auto s = fx::ehningen();
  const auto t = device::extract_triplets(s);
  std::set<device::Triplet> published;
  for (const auto &b : fx::published_batches())
    published.insert(b.begin(), b.end());
  const bool same = std::set<device::Triplet>(t.begin(), t.end()) == published;
  return {t.size() == 41 && same,
          std::to_string(t.size()) + " triplets (expected 41), set " +
              (same ? "equal" : "not equal") + " to the " +
              std::to_string(published.size()) + " listed"};
}

Outcome batch_validity() {
  const auto s = fx::ehningen();
  const auto published = fx::published_batches();
  const auto v1 = device::validate_batches(published, s);
  const auto triplets = device::extract_triplets(s);
  const auto greedy = device::schedule_batches(triplets, s);
  const auto v2 = device::validate_batches(greedy, s);
  std::set<device::Triplet> covered;
  for (const auto &b : greedy)
    covered.insert(b.begin(), b.end());
  std::set<device::Triplet> listed;
  for (const auto &b : published)
    listed.insert(b.begin(), b.end());
  const bool covers = std::includes(covered.begin(), covered.end(),
                                    listed.begin(), listed.end());
  return {published.size() == 12 && v1.empty() && greedy.size() <= 13 &&
              v2.empty() && covers,
          std::to_string(published.size()) + " published batches, " +
              std::to_string(v1.size()) + " violations; greedy " +
              std::to_string(greedy.size()) + " batches, " +
              std::to_string(v2.size()) + " violations, covering " +
              std::to_string(covered.size()) + " triplets"};
}

Outcome layout_count() {
  const auto s = fx::ehningen();
  const auto chains = device::enumerate_chains(s, 8);
  const auto oracle = brute_force_chains(s, 8);
  const bool same = std::set<std::vector<QubitId>>(chains.begin(), chains.end()) == oracle;
  return {chains.size() == 132 && same,
          std::to_string(chains.size()) + " layouts, oracle " +
              std::to_string(oracle.size()) + (same ? ", identical" : ", different")};
}

Outcome kraus_correctness() {
  double worst_closed = 0.0, worst_cptp = 0.0, worst_mixed = 0.0;
  Rng rng(2024);
  for (double t1 : {20.0, 80.0, 150.0})
    for (double ratio : {0.3, 1.0, 2.0})
      for (double t : {35.0, 300.0, 5000.0}) {
        const double t2 = ratio * t1;
        const auto ch = noise::thermal_relaxation(t1, t2, t);
        worst_cptp = std::max(worst_cptp, ch.cptp_deviation());
        Matrix excited = Matrix::Zero(2, 2);
        excited(1, 1) = 1.0;
        Matrix plus = Matrix::Constant(2, 2, 0.5);
        const Matrix e = apply_kraus(ch, excited);
        const Matrix p = apply_kraus(ch, plus);
        worst_closed = std::max(
            {worst_closed, std::abs(e(1, 1).real() - std::exp(-t * 1e-3 / t1)),
             std::abs(std::abs(p(0, 1)) - 0.5 * std::exp(-t * 1e-3 / t2))});
      }
  const auto model = noise::build_standard_model(fx::ehningen());
  for (const auto &q : model.snapshot().qubits())
    worst_cptp = std::max(worst_cptp, model.single_qubit(q.id).channel->cptp_deviation());
  for (const auto &e : model.snapshot().edges())
    worst_cptp = std::max(worst_cptp, model.cx(e.drive, e.target).channel->cptp_deviation());
  for (int arity : {1, 2, 3})
    worst_cptp = std::max(worst_cptp, noise::depolarizing_weight(arity, 0.37).cptp_deviation());
  const auto full = noise::depolarizing(1, 0.25);
  for (int k = 0; k < 100; ++k) {
    const Matrix rho = fx::random_density(1, rng);
    worst_mixed = std::max(
        worst_mixed,
        (apply_kraus(full, rho) - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff());
  }
  return {worst_closed <= 1e-12 && worst_cptp <= 1e-12 && worst_mixed <= 1e-12,
          "closed form " + fmt("%.1e", worst_closed) + ", CPTP " +
              fmt("%.1e", worst_cptp) + ", I/2 " + fmt("%.1e", worst_mixed)};
}

// Pure per-Clifford depolarizing: noiseless gates, a channel of average error
// r at every barrier closing a Clifford layer.
double rb_round_trip_error(double r, int width, const rb::RBConfig &cfg) {
  fx::ToyParams p;
  const auto dev = fx::line_device(2, p);
  noise::ModelOptions o = backend::ideal_options();
  o.barrier_error[width] = r;
  const auto b = backend::SimulatedBackend::standard(dev, o);
  std::vector<QubitId> targets = width == 1 ? std::vector<QubitId>{0}
                                            : std::vector<QubitId>{0, 1};
  const auto res = rb::run_isolated_rb(b, targets, cfg);
  return std::abs(res.fit.r - r) / r;
}

Outcome rb_round_trip() {
  std::string detail;
  bool pass = true;
  for (const auto &[name, tol] : {std::pair{"paper", 0.05}, std::pair{"desk", 0.10}}) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string failures;
    for (int width : {1, 2})
      for (double r : {0.002, 0.01, 0.05}) {
        const double rel = rb_round_trip_error(r, width, rb::RBConfig::preset(name, 17));
        worst = std::max(worst, rel);
        if (rel > tol)
          failures += " d=" + std::to_string(1 << width) + ",r=" + fmt("%g", r) +
                      ":" + fmt("%.1f%%", 100 * rel);
      }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start).count();
    pass &= failures.empty();
    detail += std::string(detail.empty() ? "" : "; ") + name + " worst " +
              fmt("%.1f%%", 100 * worst) + " (tol " + fmt("%.0f%%", 100 * tol) +
              ", " + fmt("%.1fs", secs) + ")" +
              (failures.empty() ? "" : " over:" + failures);
  }
  return {pass, detail};
}

struct Characterized {
  rb::CharacterizationResult simultaneous;
  rb::IsolatedRates isolated;
};

Characterized characterize_all(const backend::SimulatedBackend &b,
                               const std::vector<device::Batch> &batches,
                               const rb::RBConfig &cfg) {
  std::vector<device::Triplet> all;
  for (const auto &batch : batches)
    all.insert(all.end(), batch.begin(), batch.end());
  return {rb::characterize(b, batches, cfg), rb::characterize_isolated(b, all, cfg)};
}

double pair_sigma(const rb::SubsystemResult &s) {
  return s.fit.r_std_error / rb::CliffordGroup::get(2).mean_cx();
}

struct Detection {
  double hot_ratio = 0.0;
  int within = 0;
  int others = 0;
  double worst_z = 0.0;
};

Detection detect(const device::DeviceSnapshot &dev,
                 const std::vector<device::Batch> &batches,
                 const device::Triplet &hot, const noise::ModelOptions &options,
                 const rb::RBConfig &cfg) {
  const auto clean = backend::SimulatedBackend::standard(dev, options);
  const QubitId pair[] = {hot.drive, hot.target};
  const double iso_clean = rb::run_isolated_rb(clean, pair, cfg).gate_error;
  // A 3-qubit depolarizing weight w adds 3w/4 to the pair's average error.
  const double weight = 16.0 / 3.0 * iso_clean;
  const auto b = backend::SimulatedBackend::virtual_device(dev, {{hot, weight}}, options);
  const auto c = characterize_all(b, batches, cfg);
  Detection d;
  for (const auto &t : c.simultaneous.triplets) {
    const auto &iso = c.isolated.pairs.at({t.triplet.drive, t.triplet.target});
    if (t.triplet == hot) {
      d.hot_ratio = t.pair.gate_error / iso.gate_error;
      continue;
    }
    ++d.others;
    const double sigma = std::hypot(pair_sigma(t.pair), pair_sigma(iso));
    const double z = std::abs(t.pair.gate_error - iso.gate_error) / sigma;
    d.worst_z = std::max(d.worst_z, z);
    d.within += z <= 2.0;
  }
  return d;
}

// Idle relaxation is disabled for the verdict so that the injection is the
// only difference between simultaneous and isolated runs; the line also
// reports the same check with idle relaxation on.
Outcome crosstalk_detection() {
  const auto dev = fx::ehningen();
  const auto batches = device::schedule_batches(device::extract_triplets(dev), dev);
  const auto cfg = rb::RBConfig::paper(31);
  const device::Triplet hot = batches.front().front();
  noise::ModelOptions no_idle;
  no_idle.idle_relaxation = false;
  const auto d = detect(dev, batches, hot, no_idle, cfg);
  const auto idle = detect(dev, batches, hot, {}, cfg);
  return {d.hot_ratio >= 3.0 && d.within == d.others,
          "hot " + device::to_string(hot) + " at " + fmt("%.2fx", d.hot_ratio) +
              " isolated; " + std::to_string(d.within) + "/" +
              std::to_string(d.others) + " others within 2 sigma (max " +
              fmt("%.2f", d.worst_z) + "); with idle relaxation " +
              fmt("%.2fx", idle.hot_ratio) + ", " + std::to_string(idle.within) +
              "/" + std::to_string(idle.others) + " within 2 sigma (max " +
              fmt("%.2f", idle.worst_z) + ")"};
}

Outcome spectator_idle_excess() {
  const auto dev = fx::ehningen();
  const auto batches = device::schedule_batches(device::extract_triplets(dev), dev);
  const auto c = characterize_all(backend::SimulatedBackend::standard(dev), batches,
                                  rb::RBConfig::paper(37));
  int above = 0, n = 0;
  for (const auto &t : c.simultaneous.triplets) {
    ++n;
    above += t.spectator.gate_error > c.isolated.qubits.at(t.triplet.spectator).gate_error;
  }
  const double p = sign_test_p(above, n);
  return {above == n && p < 0.01,
          std::to_string(above) + "/" + std::to_string(n) +
              " spectators above isolated, sign test p=" + fmt("%.1e", p)};
}

std::map<std::vector<QubitId>, double>
by_layout(const std::vector<bench::FidelityRecord> &r) {
  std::map<std::vector<QubitId>, double> m;
  for (const auto &x : r)
    m[x.layout] = x.fidelity;
  return m;
}

Outcome model_direction() {
  const auto dev = fx::ehningen();
  const auto triplets = device::extract_triplets(dev);
  const auto batches = device::schedule_batches(triplets, dev);
  noise::CrosstalkInjection injection;
  for (const auto &b : batches)
    injection[b.front()] = 0.08;
  const auto virt = backend::SimulatedBackend::virtual_device(dev, injection);
  const auto table = rb::characterize(virt, batches, rb::RBConfig::desk(41)).table;

  const auto layouts = device::enumerate_chains(dev, 8);
  const auto templ = bench::hadamard_ladder(8);
  bench::SweepOptions shots;
  shots.shots = 10000;
  shots.seed = 43;
  const auto measured = bench::sweep(templ, layouts, virt, bench::Source::MeasuredRun1, shots);
  shots.seed = 44;
  const auto measured2 = bench::sweep(templ, layouts, virt, bench::Source::MeasuredRun2, shots);
  const auto flagged = bench::filter_outliers(measured, measured2);
  const auto standard = bench::sweep(templ, layouts, backend::SimulatedBackend::standard(dev),
                                     bench::Source::ModelStandard, {});
  const auto xtalk = bench::sweep(templ, layouts, backend::SimulatedBackend::crosstalk(dev, table),
                                  bench::Source::ModelCrosstalk, {});
  const auto truth = bench::sweep(templ, layouts, virt, bench::Source::MeasuredRun1, {});

  const auto cs = bench::compare(measured, standard, flagged);
  const auto cx = bench::compare(measured, xtalk, flagged);
  const auto std_f = by_layout(standard), truth_f = by_layout(truth),
             meas_f = by_layout(measured);
  int affected = 0, over = 0;
  for (const auto &[layout, f] : std_f) {
    if (std::abs(f - truth_f.at(layout)) <= 1e-9)
      continue;
    ++affected;
    over += f >= meas_f.at(layout);
  }
  const double p = sign_test_p(over, affected);
  return {cx.rms < cs.rms && affected > 0 && p < 0.01,
          "rms crosstalk " + fmt("%.6f", cx.rms) + " vs standard " +
              fmt("%.6f", cs.rms) + " (reduced " + fmt("%.6f", cx.rms_reduced) +
              " vs " + fmt("%.6f", cs.rms_reduced) + "); standard >= measured on " +
              std::to_string(over) + "/" + std::to_string(affected) +
              " affected layouts, sign test p=" + fmt("%.1e", p)};
}

Outcome twirling_identity() {
  const auto dev = fx::ehningen();
  const auto triplets = device::extract_triplets(dev);
  const auto layouts = device::enumerate_chains(dev, 8);
  const auto templ = bench::hadamard_ladder(8);
  const auto placed = circuit::map_to_native(
      bench::place_on_layout(templ, layouts.front(), dev), dev);
  const auto noiseless = backend::SimulatedBackend::ideal(dev);
  const auto ideal = noiseless.distribution(placed);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto tw = circuit::randomized_compile(placed, dev, triplets, seed).first;
    const auto p = noiseless.distribution(tw);
    for (std::size_t i = 0; i < p.size(); ++i)
      worst = std::max(worst, std::abs(p[i] - ideal[i]));
  }

  noise::ModelOptions pauli;
  pauli.gate_relaxation = false;
  pauli.idle_relaxation = false;
  pauli.readout = false;
  const auto b = backend::SimulatedBackend::standard(dev, pauli);
  const std::vector<std::vector<QubitId>> one = {layouts[5]};
  const int reps = 20;
  std::vector<double> tw, plain;
  for (int k = 0; k < reps; ++k) {
    bench::SweepOptions t;
    t.twirl = bench::parse_twirl("20x250");
    t.seed = 1000 + static_cast<std::uint64_t>(k);
    tw.push_back(bench::sweep(templ, one, b, bench::Source::MeasuredRun1, t)[0].fidelity);
    bench::SweepOptions u;
    u.shots = 5000;
    u.seed = 2000 + static_cast<std::uint64_t>(k);
    plain.push_back(bench::sweep(templ, one, b, bench::Source::MeasuredRun1, u)[0].fidelity);
  }
  auto mean_var = [](const std::vector<double> &v) {
    double m = 0.0, s = 0.0;
    for (double x : v)
      m += x;
    m /= static_cast<double>(v.size());
    for (double x : v)
      s += (x - m) * (x - m);
    return std::pair{m, s / static_cast<double>(v.size() - 1)};
  };
  const auto [mt, vt] = mean_var(tw);
  const auto [mp, vp] = mean_var(plain);
  const double sigma = std::sqrt(vt / reps + vp / reps);
  const double z = std::abs(mt - mp) / sigma;
  return {worst <= 1e-12 && z <= 3.0,
          "noiseless deviation " + fmt("%.1e", worst) + " over 50 seeds; twirled " +
              fmt("%.4f", mt) + " vs untwirled " + fmt("%.4f", mp) + " (" +
              fmt("%.2f", z) + " sigma)"};
}

Outcome outlier_filter() {
  Rng rng(77);
  const auto layouts = device::enumerate_chains(fx::ehningen(), 8);
  std::vector<bench::FidelityRecord> r1, r2, sim;
  std::set<std::vector<QubitId>> planted;
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    const double f = 0.6 + 0.3 * rng.uniform();
    double g = f + (rng.uniform() - 0.5) * 0.038;
    if (i % 11 == 3) {
      g = f + (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.0201 + 0.05 * rng.uniform());
      planted.insert(layouts[i]);
    }
    r1.push_back({layouts[i], f, bench::Source::MeasuredRun1});
    r2.push_back({layouts[i], g, bench::Source::MeasuredRun2});
    sim.push_back({layouts[i], f + 0.1 * (rng.uniform() - 0.5), bench::Source::ModelStandard});
  }
  const auto flagged = bench::filter_outliers(r1, r2, 0.02);
  const bool exact =
      std::set<std::vector<QubitId>>(flagged.begin(), flagged.end()) == planted;
  const auto c = bench::compare(r1, sim, flagged);
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < layouts.size(); ++i)
    if (!planted.count(layouts[i])) {
      sum += std::pow(r1[i].fidelity - sim[i].fidelity, 2);
      ++n;
    }
  const double reduced = std::sqrt(sum / n);
  return {exact && std::abs(reduced - c.rms_reduced) < 1e-12,
          std::to_string(flagged.size()) + " flagged of " +
              std::to_string(planted.size()) + " planted; reduced rms " +
              fmt("%.6f", c.rms_reduced) + " vs oracle " + fmt("%.6f", reduced)};
}

Outcome hellinger_examples() {
  const std::vector<double> a = {0.5, 0.5}, b = {1.0, 0.0}, c = {0.0, 1.0};
  const double e = std::max({std::abs(bench::hellinger_fidelity(a, a) - 1.0),
                             std::abs(bench::hellinger_fidelity(a, b) - 0.5),
                             std::abs(bench::hellinger_fidelity(b, c))});
  Rng rng(99);
  double asym = 0.0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> p(16), q(16);
    double sp = 0, sq = 0;
    for (int i = 0; i < 16; ++i) {
      sp += p[i] = rng.uniform();
      sq += q[i] = rng.uniform();
    }
    for (int i = 0; i < 16; ++i) {
      p[i] /= sp;
      q[i] /= sq;
    }
    asym = std::max(asym, std::abs(bench::hellinger_fidelity(p, q) -
                                   bench::hellinger_fidelity(q, p)));
  }
  return {e <= 1e-15 && asym <= 1e-15,
          "examples " + fmt("%.1e", e) + ", asymmetry " + fmt("%.1e", asym) +
              " over 1000 pairs"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"triplet-count", triplet_count},
      {"batch-validity", batch_validity},
      {"layout-count", layout_count},
      {"kraus-correctness", kraus_correctness},
      {"rb-round-trip", rb_round_trip},
      {"crosstalk-detection", crosstalk_detection},
      {"spectator-idle-excess", spectator_idle_excess},
      {"model-direction", model_direction},
      {"twirling-identity", twirling_identity},
      {"outlier-filter", outlier_filter},
      {"hellinger", hellinger_examples},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2zu %-22s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
