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

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace infosale {

// Probability mass cut from the upper tail of unbounded supports. Quadrature
// and type grids live on [support_lo, quantile(1 - kTailMass)].
inline constexpr double kTailMass = 1e-10;

struct Exponential {
  double rate;
};

struct Uniform {
  double lo;
  double hi;
};

// Piecewise-linear CDF through (knots[k], cdf[k]). cdf must start at 0, end at
// 1 and be strictly increasing, so the density is positive on every segment.
struct Tabulated {
  std::vector<double> knots;
  std::vector<double> cdf;
};

/// Distribution of a buyer's private type (unit profit margin).
///
/// Supplies every analytic object the mechanism formulas need: CDF, density,
/// quantile, virtual value v - (1 - F(v)) / f(v) and its inverse. Values are
/// immutable; all member functions are pure.
class TypeDistribution {
 public:
  using Kind = std::variant<Exponential, Uniform, Tabulated>;

  static TypeDistribution exponential(double rate);
  static TypeDistribution uniform(double lo, double hi);
  static TypeDistribution tabulated(std::vector<double> knots,
                                    std::vector<double> cdf_values);

  const Kind& kind() const { return kind_; }

  double support_lo() const;
  // +infinity for the exponential.
  double support_hi() const;
  // Upper end of the interval used for quadrature and grids.
  double truncated_hi() const { return truncated_hi_; }

  // Clamps to 0 below and 1 above the support.
  double cdf(double v) const;
  // Zero outside the support.
  double pdf(double v) const;

  // Throws std::invalid_argument for q outside [0, 1]. For unbounded supports
  // the result saturates at truncated_hi().
  double quantile(double q) const;

  // Throws std::domain_error where the density vanishes.
  double virtual_value(double v) const;

  // Generalized inverse of the virtual value on [support_lo, truncated_hi]:
  // saturates at either end. Throws std::domain_error for non-regular
  // distributions.
  double inverse_virtual_value(double x) const;

  // Cached result of check_regularity with the default grid.
  bool is_regular() const { return regular_; }

  std::string describe() const;

 private:
  explicit TypeDistribution(Kind kind);

  Kind kind_;
  double truncated_hi_ = 0.0;
  bool regular_ = true;
};

// Grid size used for the cached regularity flag.
inline constexpr std::size_t kRegularityGrid = 1000;

/// True iff the virtual value is non-decreasing (tolerance -1e-12) across an
/// evenly spaced interior grid of `grid_points` types.
bool check_regularity(const TypeDistribution& dist, std::size_t grid_points);

/// Parses `exp:RATE`, `uniform:LO,HI` or `tab:x0,F0,x1,F1,...`.
TypeDistribution parse_distribution(std::string_view spec);

/// E[fn(V)] for V ~ dist restricted to [support_lo, truncated_hi], by
/// quadrature split at `breaks`.
double expectation(const TypeDistribution& dist,
                   const std::function<double(double)>& fn,
                   std::span<const double> breaks = {});

/// Equal-probability type nodes quantile((k + 1/2) / count), k = 0..count-1.
std::vector<double> quantile_grid(const TypeDistribution& dist,
                                  std::size_t count);

/// Evenly spaced points on [lo, hi] inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace infosale
