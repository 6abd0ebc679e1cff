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

#include "infosale/distributions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "infosale/quadrature.hpp"

namespace infosale {
namespace {

const TypeDistribution kExp = TypeDistribution::exponential(1.0);
const TypeDistribution kUnit = TypeDistribution::uniform(0.0, 1.0);

// Density 0.9 on [0,1], 0.01 on [1,2], 0.09 on [2,3]: the virtual value drops
// at x = 1 where the density collapses.
TypeDistribution bimodal() {
  return TypeDistribution::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, 0.9, 0.91, 1.0});
}

TEST(Cdf, Examples) {
  EXPECT_NEAR(kExp.cdf(std::log(2.0)), 0.5, 1e-15);
  EXPECT_EQ(kUnit.cdf(0.0), 0.0);
  EXPECT_NEAR(kExp.cdf(std::log(4.0)), 0.75, 1e-15);
  EXPECT_EQ(kExp.cdf(-1.0), 0.0);
  EXPECT_EQ(kUnit.cdf(2.0), 1.0);
}

TEST(Quantile, Examples) {
  EXPECT_NEAR(kExp.quantile(0.5), std::log(2.0), 1e-12);
  EXPECT_NEAR(kExp.quantile(0.75), std::log(4.0), 1e-12);
  EXPECT_NEAR(kUnit.quantile(0.25), 0.25, 1e-15);
  EXPECT_THROW(kExp.quantile(-0.1), std::invalid_argument);
  EXPECT_THROW(kExp.quantile(1.1), std::invalid_argument);
  EXPECT_DOUBLE_EQ(kExp.quantile(1.0), kExp.truncated_hi());
}

TEST(Quantile, TruncationBound) {
  EXPECT_NEAR(kExp.truncated_hi(), -std::log(kTailMass), 1e-9);
  EXPECT_NEAR(kExp.cdf(kExp.truncated_hi()), 1.0 - kTailMass, 1e-15);
  EXPECT_EQ(kUnit.truncated_hi(), 1.0);
}

TEST(VirtualValue, Examples) {
  EXPECT_NEAR(kExp.virtual_value(2.0), 1.0, 1e-12);
  EXPECT_NEAR(kExp.virtual_value(1.0), 0.0, 1e-12);
  EXPECT_NEAR(kUnit.virtual_value(0.5), 0.0, 1e-12);
  EXPECT_NEAR(kUnit.virtual_value(0.75), 0.5, 1e-12);
  EXPECT_THROW(kUnit.virtual_value(1.5), std::domain_error);
  EXPECT_THROW(kExp.virtual_value(-1.0), std::domain_error);
}

TEST(InverseVirtualValue, Examples) {
  EXPECT_NEAR(kExp.inverse_virtual_value(-0.5), 0.5, 1e-10);
  EXPECT_NEAR(kExp.inverse_virtual_value(0.0), 1.0, 1e-10);
  EXPECT_NEAR(kUnit.inverse_virtual_value(1.5), 1.0, 1e-15);
  EXPECT_NEAR(kUnit.inverse_virtual_value(-3.0), 0.0, 1e-15);
  EXPECT_NEAR(kUnit.inverse_virtual_value(0.0), 0.5, 1e-12);
  EXPECT_THROW(bimodal().inverse_virtual_value(0.0), std::domain_error);
}

TEST(Regularity, Examples) {
  EXPECT_TRUE(check_regularity(kExp, 1000));
  EXPECT_TRUE(check_regularity(kUnit, 1000));
  EXPECT_FALSE(check_regularity(bimodal(), 1000));
  EXPECT_FALSE(bimodal().is_regular());
  EXPECT_THROW(check_regularity(kExp, 1), std::invalid_argument);
}

TEST(Regularity, BimodalVirtualValueDrops) {
  // Oracle from the density pieces: phi = v - (1 - F) / f.
  const TypeDistribution d = bimodal();
  const double left = 0.99 - (1.0 - 0.9 * 0.99) / 0.9;
  const double right = 1.01 - (1.0 - (0.9 + 0.01 * 0.01)) / 0.01;
  EXPECT_NEAR(d.virtual_value(0.99), left, 1e-9);
  EXPECT_NEAR(d.virtual_value(1.01), right, 1e-9);
  EXPECT_LT(right, left);
}

TEST(Parse, Specs) {
  EXPECT_DOUBLE_EQ(parse_distribution("exp:2").cdf(1.0), 1.0 - std::exp(-2.0));
  EXPECT_DOUBLE_EQ(parse_distribution("uniform:1,3").cdf(2.0), 0.5);
  EXPECT_NEAR(parse_distribution("tab:0,0,1,0.9,2,0.91,3,1").cdf(1.5), 0.905, 1e-15);
  EXPECT_THROW(parse_distribution("gamma:1"), std::invalid_argument);
  EXPECT_THROW(parse_distribution("exp:-1"), std::invalid_argument);
  EXPECT_THROW(parse_distribution("uniform:1,1"), std::invalid_argument);
  EXPECT_THROW(parse_distribution("exp:x"), std::invalid_argument);
}

class RoundTrip : public ::testing::TestWithParam<const char*> {};

TEST_P(RoundTrip, QuantileInvertsCdf) {
  const TypeDistribution d = parse_distribution(GetParam());
  const double lo = d.support_lo();
  const double hi = d.quantile(0.999);
  for (int k = 1; k <= 1000; ++k) {
    const double v = lo + (hi - lo) * k / 1001.0;
    ASSERT_NEAR(d.quantile(d.cdf(v)), v, 1e-9) << "v=" << v;
  }
}

TEST_P(RoundTrip, InverseVirtualValueInvertsVirtualValue) {
  const TypeDistribution d = parse_distribution(GetParam());
  const double lo = d.support_lo();
  const double hi = d.quantile(0.999);
  for (int k = 1; k <= 1000; ++k) {
    const double v = lo + (hi - lo) * k / 1001.0;
    ASSERT_NEAR(d.inverse_virtual_value(d.virtual_value(v)), v, 1e-9) << "v=" << v;
  }
}

TEST_P(RoundTrip, DensityIntegratesToOne) {
  const TypeDistribution d = parse_distribution(GetParam());
  const double mass =
      integrate([&](double v) { return d.pdf(v); }, d.support_lo(), d.truncated_hi());
  EXPECT_NEAR(mass, 1.0, 1e-8);
}

TEST_P(RoundTrip, CdfIsMonotone) {
  const TypeDistribution d = parse_distribution(GetParam());
  double previous = 0.0;
  for (double v : linear_grid(d.support_lo(), d.truncated_hi(), 2000)) {
    ASSERT_GE(d.cdf(v), previous);
    previous = d.cdf(v);
  }
}

INSTANTIATE_TEST_SUITE_P(BuiltIns, RoundTrip,
                         ::testing::Values("exp:1", "exp:2.5", "uniform:0,1",
                                           "uniform:0.5,2"));

TEST(Expectation, Moments) {
  EXPECT_NEAR(expectation(kExp, [](double v) { return v; }), 1.0, 1e-8);
  EXPECT_NEAR(expectation(kUnit, [](double v) { return v * v; }), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(expectation(bimodal(), [](double) { return 1.0; }), 1.0, 1e-12);
  // Piecewise mean of the bimodal density.
  const double mean = 0.9 * 0.5 + 0.01 * 1.5 + 0.09 * 2.5;
  EXPECT_NEAR(expectation(bimodal(), [](double v) { return v; }), mean, 1e-12);
}

TEST(Grids, QuantileNodes) {
  const std::vector<double> nodes = quantile_grid(kUnit, 4);
  ASSERT_EQ(nodes.size(), 4u);
  EXPECT_NEAR(nodes[0], 0.125, 1e-15);
  EXPECT_NEAR(nodes[3], 0.875, 1e-15);
  const std::vector<double> line = linear_grid(0.0, 1.0, 5);
  EXPECT_EQ(line.front(), 0.0);
  EXPECT_EQ(line.back(), 1.0);
  EXPECT_NEAR(line[1], 0.25, 1e-15);
}

}  // namespace
}  // namespace infosale
