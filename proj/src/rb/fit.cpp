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

#include "xtalk/rb/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "xtalk/common/error.hpp"

namespace xtalk::rb {

namespace {

struct Linear {
  double A = 0.0;
  double B = 0.0;
  double sse = 0.0;
};

// Best A, B for fixed alpha.
Linear solve_linear(std::span<const RBPoint> pts, double alpha) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = std::pow(alpha, pts[static_cast<std::size_t>(i)].length);
    X(i, 1) = 1.0;
    y(i) = pts[static_cast<std::size_t>(i)].survival;
  }
  Eigen::Vector2d beta = X.completeOrthogonalDecomposition().solve(y);
  Linear out{beta(0), beta(1), (X * beta - y).squaredNorm()};
  return out;
}

} // namespace

double alpha_to_rate(double alpha, int dim) {
  return (dim - 1.0) * (1.0 - alpha) / dim;
}

DecayFit fit_decay(std::span<const RBPoint> points, int dim) {
  std::set<int> lengths;
  for (const auto &p : points)
    lengths.insert(p.length);
  if (lengths.size() < 3)
    throw InputError("fit_decay needs at least 3 distinct lengths");
  if (dim < 2)
    throw InputError("fit_decay: dimension must be >= 2");

  std::vector<RBPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(),
            [](const RBPoint &a, const RBPoint &b) { return a.length < b.length; });

  DecayFit fit;
  fit.dim = dim;

  // Starting point from the first and last lengths and a log-linear fit.
  fit.initial_B = pts.back().survival;
  fit.initial_A = pts.front().survival - pts.back().survival;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double v = pts[i].survival - fit.initial_B;
      if (v <= 0.0)
        continue;
      const double x = pts[i].length, y = std::log(v);
      sx += x, sy += y, sxx += x * x, sxy += x * y, ++k;
    }
    const double den = k * sxx - sx * sx;
    fit.initial_alpha =
        k >= 2 && den > 0.0
            ? std::clamp(std::exp((k * sxy - sx * sy) / den), 0.0, 1.0)
            : 1.0;
  }

  double lo_s = pts.front().survival, hi_s = lo_s;
  for (const auto &p : pts) {
    lo_s = std::min(lo_s, p.survival);
    hi_s = std::max(hi_s, p.survival);
  }
  if (hi_s - lo_s < 1e-12) {
    fit.A = 0.0;
    fit.B = pts.front().survival;
    fit.alpha = 1.0;
  } else {
    auto sse = [&](double a) { return solve_linear(pts, a).sse; };
    constexpr int kGrid = 2000;
    int best = kGrid;
    double best_sse = sse(1.0);
    for (int i = 0; i < kGrid; ++i) {
      const double a = static_cast<double>(i) / kGrid;
      const double s = sse(a);
      if (s < best_sse) {
        best_sse = s;
        best = i;
      }
    }
    const double lo = std::max(0.0, (best - 1.0) / kGrid);
    const double hi = std::min(1.0, (best + 1.0) / kGrid);
    const auto [a, s] = boost::math::tools::brent_find_minima(sse, lo, hi, 52);
    fit.alpha = s <= best_sse ? a : static_cast<double>(best) / kGrid;
    const auto lin = solve_linear(pts, fit.alpha);
    fit.A = lin.A;
    fit.B = lin.B;
    if (fit.alpha <= 0.0)
      fit.warnings.push_back("alpha clamped at 0");
    if (fit.alpha >= 1.0)
      fit.warnings.push_back("alpha clamped at 1");
  }
  fit.r = alpha_to_rate(fit.alpha, dim);

  double sq = 0.0;
  for (const auto &p : pts) {
    const double e = fit.A * std::pow(fit.alpha, p.length) + fit.B - p.survival;
    sq += e * e;
  }
  fit.residual = std::sqrt(sq / static_cast<double>(pts.size()));

  // Sandwich covariance of the unweighted estimator with the point errors.
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd J(n, 3);
  Eigen::VectorXd var(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto &p = pts[static_cast<std::size_t>(i)];
    const double m = p.length;
    J(i, 0) = std::pow(fit.alpha, m);
    J(i, 1) = 1.0;
    J(i, 2) = m > 0 ? fit.A * m * std::pow(fit.alpha, m - 1.0) : 0.0;
    var(i) = p.std_error * p.std_error;
  }
  const Eigen::MatrixXd JtJ = J.transpose() * J;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(JtJ);
  if (lu.isInvertible()) {
    const Eigen::MatrixXd inv = lu.inverse();
    const Eigen::MatrixXd cov =
        inv * (J.transpose() * var.asDiagonal() * J) * inv;
    fit.r_std_error = (dim - 1.0) / dim * std::sqrt(std::max(0.0, cov(2, 2)));
  } else {
    fit.warnings.push_back("fit parameters are not identifiable");
  }
  if (!std::isfinite(fit.residual))
    throw NumericalError("RB fit diverged (initial alpha " +
                         std::to_string(fit.initial_alpha) + ")");
  return fit;
}

nlohmann::json to_json(const RBPoint &p) {
  return {{"length", p.length},
          {"survival", p.survival},
          {"stderr", p.std_error}};
}

nlohmann::json to_json(const DecayFit &f) {
  return {{"A", f.A},
          {"B", f.B},
          {"alpha", f.alpha},
          {"r", f.r},
          {"r_stderr", f.r_std_error},
          {"residual", f.residual},
          {"dim", f.dim},
          {"initial", {{"A", f.initial_A}, {"B", f.initial_B}, {"alpha", f.initial_alpha}}},
          {"warnings", f.warnings}};
}

} // namespace xtalk::rb
