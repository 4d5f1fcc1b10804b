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

#include "xtalk/noise/crosstalk.hpp"

#include <fstream>

#include "xtalk/common/error.hpp"

namespace xtalk::noise {

namespace {

nlohmann::json parse_file(const std::string &path, const std::string &what) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + what + " file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(what + " file '" + path + "': " + e.what());
  }
}

double rate_field(const nlohmann::json &obj, const char *key,
                  const std::string &field) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw ParseError(field + "." + key + ": missing or not a number");
  return obj.at(key).get<double>();
}

void check_unit(double v, const std::string &field) {
  if (!(v >= 0.0 && v <= 1.0))
    throw InvariantError(field, "value outside [0, 1]");
}

} // namespace

nlohmann::json to_json(const CrosstalkTable &table) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &[t, e] : table) {
    auto j = device::triplet_to_json(t);
    j["cx_sim_error"] = e.cx_sim_error;
    j["sq_sim_error"] = e.sq_sim_error;
    out.push_back(j);
  }
  return out;
}

CrosstalkTable table_from_json(const nlohmann::json &doc) {
  if (!doc.is_array())
    throw ParseError("crosstalk table: expected an array");
  CrosstalkTable out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string field = "[" + std::to_string(i) + "]";
    const auto t = device::triplet_from_json(doc[i], field);
    CrosstalkEntry e{rate_field(doc[i], "cx_sim_error", field),
                     rate_field(doc[i], "sq_sim_error", field)};
    check_unit(e.cx_sim_error, field + ".cx_sim_error");
    check_unit(e.sq_sim_error, field + ".sq_sim_error");
    if (!out.emplace(t, e).second)
      throw InvariantError(field, "duplicate triplet " + device::to_string(t));
  }
  return out;
}

CrosstalkTable load_table_file(const std::string &path) {
  return table_from_json(parse_file(path, "crosstalk table"));
}

nlohmann::json to_json(const CrosstalkInjection &injection) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &[t, w] : injection) {
    auto j = device::triplet_to_json(t);
    j["weight"] = w;
    out.push_back(j);
  }
  return out;
}

CrosstalkInjection injection_from_json(const nlohmann::json &doc) {
  if (!doc.is_array())
    throw ParseError("crosstalk injection: expected an array");
  CrosstalkInjection out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string field = "[" + std::to_string(i) + "]";
    const auto t = device::triplet_from_json(doc[i], field);
    const double w = rate_field(doc[i], "weight", field);
    check_unit(w, field + ".weight");
    if (!out.emplace(t, w).second)
      throw InvariantError(field, "duplicate triplet " + device::to_string(t));
  }
  return out;
}

CrosstalkInjection load_injection_file(const std::string &path) {
  return injection_from_json(parse_file(path, "crosstalk injection"));
}

void validate(const CrosstalkTable &table,
              const device::DeviceSnapshot &snapshot) {
  for (const auto &[t, e] : table) {
    device::check_triplet(t, snapshot);
    check_unit(e.cx_sim_error, device::to_string(t) + ".cx_sim_error");
    check_unit(e.sq_sim_error, device::to_string(t) + ".sq_sim_error");
  }
}

void validate(const CrosstalkInjection &injection,
              const device::DeviceSnapshot &snapshot) {
  for (const auto &[t, w] : injection) {
    device::check_triplet(t, snapshot);
    check_unit(w, device::to_string(t) + ".weight");
  }
}

} // namespace xtalk::noise
