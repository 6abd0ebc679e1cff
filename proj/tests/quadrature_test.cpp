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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

namespace infosale {
namespace {

TEST(Integrate, Smooth) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, 0.0, 5.0),
              1.0 - std::exp(-5.0), 1e-14);
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, M_PI), 2.0, 1e-13);
}

TEST(Integrate, ReversedBounds) {
  EXPECT_NEAR(integrate([](double x) { return x; }, 1.0, 0.0), -0.5, 1e-15);
  EXPECT_EQ(integrate([](double x) { return x; }, 1.0, 1.0), 0.0);
}

TEST(Integrate, StepWithBreak) {
  const double jump = 1.0 / 3.0;
  const auto step = [jump](double x) { return x <= jump ? 1.0 : 0.0; };
  const std::vector<double> breaks{jump};
  EXPECT_NEAR(integrate(step, 0.0, 1.0, breaks), jump, 1e-15);
  // Without the hint, refinement still localizes the jump.
  EXPECT_NEAR(integrate(step, 0.0, 1.0), jump, 1e-10);
}

TEST(Integrate, Kink) {
  EXPECT_NEAR(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0),
              0.5 * (0.09 + 0.49), 1e-12);
}

TEST(Integrate, RejectsNonFinite) {
  EXPECT_THROW(integrate([](double) { return std::nan(""); }, 0.0, 1.0),
               QuadratureError);
  EXPECT_THROW(integrate([](double x) { return x; }, 0.0,
                         std::numeric_limits<double>::infinity()),
               QuadratureError);
}

TEST(Bisect, MachineResolution) {
  const double target = std::log(2.0);
  const double edge = bisect_boundary([&](double x) { return x <= target; }, 0.0, 1.0);
  EXPECT_LE(edge, target);
  EXPECT_NEAR(edge, target, 1e-15);
}

}  // namespace
}  // namespace infosale
