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

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace xtalk::rb {

struct RBPoint {
  int length = 0;
  double survival = 0.0;  // mean over repetitions
  double std_error = 0.0; // standard error over repetitions
};

struct DecayFit {
  double A = 0.0;
  double B = 0.0;
  double alpha = 1.0;
  double r = 0.0; // (d - 1)(1 - alpha) / d
  double residual = 0.0; // RMS of fit residuals
  double r_std_error = 0.0;
  int dim = 2;
  // Log-linear starting point, kept for diagnostics.
  double initial_A = 0.0;
  double initial_B = 0.0;
  double initial_alpha = 1.0;
  std::vector<std::string> warnings;
};

// Unweighted least squares of survival(m) = A alpha^m + B with alpha in
// [0, 1]. For each alpha the optimal A, B are linear; alpha is located by a
// grid scan refined with Brent's method. Point standard errors propagate to
// r_std_error. Throws InputError with fewer than 3 distinct lengths.
DecayFit fit_decay(std::span<const RBPoint> points, int dim);

double alpha_to_rate(double alpha, int dim);

nlohmann::json to_json(const RBPoint &p);
nlohmann::json to_json(const DecayFit &f);

} // namespace xtalk::rb
