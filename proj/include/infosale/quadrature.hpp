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

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace infosale {

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kQuadratureTolerance = 1e-12;

/// Adaptive composite Gauss-Legendre quadrature of `fn` over [a, b].
///
/// The interval is first cut into panels at every point of `breaks` that lies
/// strictly inside (a, b); each panel is then refined by bisection until the
/// 15-point rule on the panel agrees with the sum over its two halves. Jumps
/// of the integrand should be listed in `breaks`; kinks are handled by the
/// refinement. Throws QuadratureError on non-finite integrand values or when
/// a panel fails to converge.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 std::span<const double> breaks = {},
                 double tolerance = kQuadratureTolerance);

/// Boundary of a monotone predicate on [lo, hi]: `pred(lo)` must hold and
/// `pred(hi)` must not. Bisects to machine resolution and returns the last
/// point where the predicate held.
double bisect_boundary(const std::function<bool(double)>& pred, double lo,
                       double hi);

}  // namespace infosale
