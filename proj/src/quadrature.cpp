// Copyright 2026 The infosale Authors
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

#include "infosale/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace infosale {
namespace {

using Rule = boost::math::quadrature::gauss<double, 15>;

constexpr int kMaxDepth = 60;

double panel(const std::function<double(double)>& fn, double a, double b) {
  const double value = Rule::integrate(fn, a, b);
  if (!std::isfinite(value)) {
    throw QuadratureError("non-finite integrand on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "]");
  }
  return value;
}

double refine(const std::function<double(double)>& fn, double a, double b,
              double whole, double tolerance, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel(fn, a, mid);
  const double right = panel(fn, mid, b);
  const double halves = left + right;
  if (std::abs(halves - whole) <= tolerance) return halves;
  // A jump inside a panel this narrow contributes below double resolution.
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (b - a <= 1e-13 * scale) return halves;
  if (depth >= kMaxDepth) {
    throw QuadratureError("no convergence on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  const double half_tol = std::max(0.5 * tolerance, 1e-17);
  return refine(fn, a, mid, left, half_tol, depth + 1) +
         refine(fn, mid, b, right, half_tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b,
                 std::span<const double> breaks, double tolerance) {
  if (a == b) return 0.0;
  if (!(a < b)) return -integrate(fn, b, a, breaks, tolerance);
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw QuadratureError("integration bounds must be finite");
  }

  std::vector<double> cuts{a};
  for (double x : breaks) {
    if (std::isfinite(x) && x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double width = b - a;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const double share = tolerance * (hi - lo) / width;
    total += refine(fn, lo, hi, panel(fn, lo, hi), share, 0);
  }
  return total;
}

double bisect_boundary(const std::function<bool(double)>& pred, double lo,
                       double hi) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace infosale
