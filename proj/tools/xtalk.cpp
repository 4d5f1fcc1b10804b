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

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "xtalk/backend/backend.hpp"
#include "xtalk/bench/fidelity.hpp"
#include "xtalk/bench/ladder.hpp"
#include "xtalk/bench/sweep.hpp"
#include "xtalk/common/error.hpp"
#include "xtalk/common/rng.hpp"
#include "xtalk/device/collisions.hpp"
#include "xtalk/device/topology.hpp"
#include "xtalk/noise/crosstalk.hpp"
#include "xtalk/rb/characterize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xtalk;

namespace {

constexpr const char *kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_text(const fs::path &path, const std::string &text) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const fs::path &path, const json &doc) {
  write_text(path, doc.dump(2) + "\n");
}

json read_json(const std::string &path, const std::string &what) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + what + " file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError(what + " '" + path + "': " + e.what());
  }
}

// Accepts a bare table or a characterize output holding one under "table".
noise::CrosstalkTable read_table(const std::string &path) {
  const json doc = read_json(path, "table");
  if (doc.is_object() && doc.contains("table"))
    return noise::table_from_json(doc["table"]);
  return noise::table_from_json(doc);
}

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  std::uint64_t seed = 0;
  std::string config;
  std::string started;

  json to_json() const {
    return {{"command", command},  {"argv", argv},
            {"inputs", inputs},    {"outputs", outputs},
            {"seed", seed},        {"config", config},
            {"tool", "xtalk"},     {"version", kVersion},
            {"started", started},  {"finished", utc_now()}};
  }
};

struct Common {
  std::string calibration;
  std::uint64_t seed = 0;
  std::string manifest_out;
};

device::DeviceSnapshot load_device(const std::string &path) {
  return device::load_snapshot_file(path);
}

void finish(Manifest &m, const fs::path &default_path,
            const std::string &override_path) {
  const fs::path path = override_path.empty() ? default_path : fs::path(override_path);
  m.outputs["manifest"] = path.string();
  write_json(path, m.to_json());
}

int cmd_plan(const Common &c, const std::string &out, Manifest &m) {
  const auto dev = load_device(c.calibration);
  const auto triplets = device::extract_triplets(dev);
  const auto batches = device::schedule_batches(triplets, dev);
  json trips = json::array();
  for (const auto &t : triplets)
    trips.push_back(device::triplet_to_json(t));
  write_json(out, {{"device", dev.name()},
                   {"triplets", trips},
                   {"batches", device::batches_to_json(batches)}});
  m.inputs["calibration"] = c.calibration;
  m.outputs["plan"] = out;
  finish(m, out + ".manifest.json", c.manifest_out);
  std::cout << triplets.size() << " triplets, " << batches.size()
            << " batches\n";
  return kExitOk;
}

int cmd_characterize(const Common &c, const std::string &inject,
                     const std::string &batches_path, const std::string &preset,
                     bool isolated, const std::string &out, Manifest &m) {
  const auto dev = load_device(c.calibration);
  const auto config = rb::RBConfig::preset(preset, c.seed);
  std::vector<device::Batch> batches =
      batches_path.empty()
          ? device::schedule_batches(device::extract_triplets(dev), dev)
          : device::load_batches_file(batches_path);
  noise::CrosstalkInjection injection;
  if (!inject.empty())
    injection = noise::load_injection_file(inject);
  const auto backend = backend::SimulatedBackend::virtual_device(dev, injection);

  const auto result = rb::characterize(backend, batches, config);
  json doc = rb::to_json(result);
  if (isolated) {
    std::vector<device::Triplet> all;
    for (const auto &b : batches)
      all.insert(all.end(), b.begin(), b.end());
    doc["isolated"] = rb::to_json(rb::characterize_isolated(backend, all, config));
  }
  write_json(out, doc);

  m.config = preset;
  m.inputs["calibration"] = c.calibration;
  if (!inject.empty())
    m.inputs["inject"] = inject;
  if (!batches_path.empty())
    m.inputs["batches"] = batches_path;
  m.outputs["result"] = out;
  finish(m, out + ".manifest.json", c.manifest_out);
  for (const auto &w : result.warnings)
    std::cerr << "warning: " << w << "\n";
  std::cout << result.table.size() << " triplets characterized\n";
  return kExitOk;
}

struct SweepArgs {
  std::string table;
  std::string inject;
  int ladder = 8;
  std::string model = "both";
  std::string twirl;
  std::int64_t shots = 10000;
  std::string out;
};

int cmd_sweep(const Common &c, const SweepArgs &a, Manifest &m) {
  const auto dev = load_device(c.calibration);
  const bool want_standard = a.model == "standard" || a.model == "both";
  const bool want_crosstalk = a.model == "crosstalk" || a.model == "both";
  if (want_crosstalk && a.table.empty())
    throw InputError("--model " + a.model + " needs --table");
  if (a.ladder < 1 || a.ladder > dev.num_qubits())
    throw InputError("--ladder " + std::to_string(a.ladder) +
                     " exceeds the device's " +
                     std::to_string(dev.num_qubits()) + " qubits");
  const auto layouts = device::enumerate_chains(dev, a.ladder);
  if (layouts.empty())
    throw InputError("the coupling graph has no simple path of " +
                     std::to_string(a.ladder) + " qubits");
  const auto templ = bench::hadamard_ladder(a.ladder);

  noise::CrosstalkInjection injection;
  if (!a.inject.empty())
    injection = noise::load_injection_file(a.inject);
  const auto device_backend = backend::SimulatedBackend::virtual_device(dev, injection);

  bench::SweepOptions measured;
  if (!a.twirl.empty())
    measured.twirl = bench::parse_twirl(a.twirl);
  measured.shots = a.shots;
  auto run_opts = [&](const char *tag) {
    auto o = measured;
    o.seed = Rng::derive(c.seed, {Rng::tag(tag)});
    return o;
  };
  const auto run1 = bench::sweep(templ, layouts, device_backend,
                                 bench::Source::MeasuredRun1, run_opts("run1"));
  const auto run2 = bench::sweep(templ, layouts, device_backend,
                                 bench::Source::MeasuredRun2, run_opts("run2"));
  const auto flagged = bench::filter_outliers(run1, run2);

  std::vector<bench::FidelityRecord> all(run1);
  all.insert(all.end(), run2.begin(), run2.end());
  json comparison = {{"layouts", layouts.size()},
                     {"flagged", flagged.size()}};
  const fs::path dir(a.out);
  auto model_sweep = [&](const backend::SimulatedBackend &b, bench::Source s,
                         const std::string &key) {
    const auto recs = bench::sweep(templ, layouts, b, s, {});
    all.insert(all.end(), recs.begin(), recs.end());
    comparison[key] = bench::to_json(bench::compare(run1, recs, flagged));
    write_json(dir / ("plot_" + key + ".json"),
               bench::plot_data(run1, recs, flagged));
    m.outputs["plot_" + key] = (dir / ("plot_" + key + ".json")).string();
  };
  if (want_standard)
    model_sweep(backend::SimulatedBackend::standard(dev),
                bench::Source::ModelStandard, "standard");
  if (want_crosstalk)
    model_sweep(backend::SimulatedBackend::crosstalk(dev, read_table(a.table)),
                bench::Source::ModelCrosstalk, "crosstalk");

  write_text(dir / "records.csv", bench::records_csv(all, flagged));
  write_json(dir / "comparison.json", comparison);

  m.inputs["calibration"] = c.calibration;
  if (!a.table.empty())
    m.inputs["table"] = a.table;
  if (!a.inject.empty())
    m.inputs["inject"] = a.inject;
  m.outputs["records"] = (dir / "records.csv").string();
  m.outputs["comparison"] = (dir / "comparison.json").string();
  finish(m, dir / "manifest.json", c.manifest_out);

  std::cout << layouts.size() << " layouts, " << flagged.size()
            << " flagged\n";
  for (const char *key : {"standard", "crosstalk"})
    if (comparison.contains(key))
      std::cout << key << ": rms " << comparison[key]["rms"].get<double>()
                << ", reduced rms "
                << comparison[key]["rms_reduced"].get<double>() << "\n";
  return kExitOk;
}

int cmd_collisions(const Common &c, const std::string &thresholds,
                   const std::string &out, Manifest &m) {
  const auto dev = load_device(c.calibration);
  device::CollisionThresholds th;
  if (!thresholds.empty())
    th = device::CollisionThresholds::from_json(read_json(thresholds, "thresholds"));
  const json doc = device::to_json(device::detect_collisions(dev, th));
  m.inputs["calibration"] = c.calibration;
  if (!thresholds.empty())
    m.inputs["thresholds"] = thresholds;
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
    if (!c.manifest_out.empty())
      finish(m, c.manifest_out, c.manifest_out);
  } else {
    write_json(out, doc);
    m.outputs["collisions"] = out;
    finish(m, out + ".manifest.json", c.manifest_out);
  }
  return kExitOk;
}

void apply_thread_limit() {
  const char *env = std::getenv("CROSSTALK_SIM_THREADS");
  if (env == nullptr || *env == '\0')
    return;
  char *end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1)
    throw InputError("CROSSTALK_SIM_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

int run(const std::vector<std::string> &args);

int replay(const std::string &path) {
  const json doc = read_json(path, "manifest");
  if (!doc.contains("argv") || !doc["argv"].is_array())
    throw ParseError("manifest '" + path + "': missing argv");
  auto argv = doc["argv"].get<std::vector<std::string>>();
  return run(argv);
}

int run(const std::vector<std::string> &args) {
  CLI::App app{"Crosstalk characterization and simulation toolkit"};
  app.set_version_flag("--version", kVersion);
  std::string manifest_in;
  app.add_option("--manifest", manifest_in,
                 "Replay the command recorded in a run manifest");

  Common common;
  auto add_common = [&](CLI::App *sub, bool seeded) {
    sub->add_option("--calibration", common.calibration, "Calibration snapshot JSON")
        ->required();
    if (seeded)
      sub->add_option("--seed", common.seed, "Root seed");
    sub->add_option("--manifest-out", common.manifest_out,
                    "Manifest path (default: next to the output)");
  };

  auto *plan = app.add_subcommand("plan", "Extract triplets and schedule batches");
  std::string plan_out;
  add_common(plan, false);
  plan->add_option("--out", plan_out, "Plan JSON")->required();

  auto *chr = app.add_subcommand("characterize",
                                 "Simultaneous RB of every triplet on the virtual device");
  std::string inject, batches, preset = "desk", chr_out;
  bool isolated = false;
  add_common(chr, true);
  chr->add_option("--inject", inject, "Ground-truth crosstalk injection JSON");
  chr->add_option("--batches", batches, "Batch JSON (default: scheduled)");
  chr->add_option("--config", preset, "RB preset")
      ->check(CLI::IsMember({"paper", "desk"}));
  chr->add_flag("--isolated", isolated, "Also run isolated RB references");
  chr->add_option("--out", chr_out, "Result JSON")->required();

  auto *swp = app.add_subcommand("sweep", "Ladder fidelity over every layout");
  SweepArgs sa;
  add_common(swp, true);
  swp->add_option("--table", sa.table, "Crosstalk table JSON");
  swp->add_option("--inject", sa.inject, "Ground-truth crosstalk injection JSON");
  swp->add_option("--ladder", sa.ladder, "Ladder size");
  swp->add_option("--model", sa.model, "Models to compare")
      ->check(CLI::IsMember({"standard", "crosstalk", "both"}));
  swp->add_option("--twirl", sa.twirl, "Randomized compiling as RxS");
  swp->add_option("--shots", sa.shots, "Shots per layout without twirling");
  swp->add_option("--out", sa.out, "Output directory")->required();

  auto *col = app.add_subcommand("collisions", "Frequency collision report");
  std::string thresholds, col_out;
  add_common(col, false);
  col->add_option("--thresholds", thresholds, "Detuning thresholds JSON");
  col->add_option("--out", col_out, "Report JSON (default: stdout)");

  std::vector<const char *> argv{"xtalk"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInput;
  }

  if (!manifest_in.empty())
    return replay(manifest_in);
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitInput;
  }

  apply_thread_limit();
  Manifest m;
  m.argv = args;
  m.seed = common.seed;
  m.started = utc_now();
  if (plan->parsed()) {
    m.command = "plan";
    return cmd_plan(common, plan_out, m);
  }
  if (chr->parsed()) {
    m.command = "characterize";
    return cmd_characterize(common, inject, batches, preset, isolated, chr_out, m);
  }
  if (swp->parsed()) {
    m.command = "sweep";
    return cmd_sweep(common, sa, m);
  }
  m.command = "collisions";
  return cmd_collisions(common, thresholds, col_out, m);
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
