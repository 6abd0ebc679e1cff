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

#include "infosale/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace infosale {
namespace {

GameSpec exp_game(double alpha, double prior = 0.5) {
  return GameSpec(alpha, prior, TypeDistribution::exponential(1.0));
}

TEST(DiscreteInstance, Invariants) {
  const GameSpec g = exp_game(0.5);
  const DiscreteInstance inst = discretize(welfare_rule(g), g, 31);
  EXPECT_NEAR(std::accumulate(inst.weights.begin(), inst.weights.end(), 0.0), 1.0, 1e-12);
  for (double h : inst.h1) {
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, 1.0);
  }
  EXPECT_TRUE(std::is_sorted(inst.nodes.begin(), inst.nodes.end()));
  EXPECT_THROW(make_instance(g, 202), std::invalid_argument);
}

TEST(Discretize, RowAveragesAreInterimProbabilities) {
  const GameSpec g = exp_game(1.5, 0.75);
  const MarginalRule rule = revenue_rule(g);
  const DiscreteInstance inst = discretize_cells(rule, g, 41);
  for (std::size_t i = 0; i < inst.size(); i += 5) {
    double row = 0.0;
    for (std::size_t j = 0; j < inst.size(); ++j) row += inst.weights[j] * inst.at(Player::one, i, j);
    EXPECT_NEAR(row, closed_form_marginals(RuleKind::revenue, g, inst.nodes[i]).own_correct,
                1e-9);
  }
}

TEST(GridOptimize, WelfareExample) {
  const GameSpec g = exp_game(2.0 / 3.0);
  const OracleGap gap = oracle_gap(RuleKind::welfare, g, 51);
  EXPECT_LT(gap.relative_gap, 1e-3);
  EXPECT_GE(gap.grid_optimum, gap.closed_form - 1e-12);
}

TEST(GridOptimize, RevenueExample) {
  const OracleGap gap = oracle_gap(RuleKind::revenue, exp_game(0.5), 51);
  EXPECT_LT(gap.relative_gap, 1e-3);
  EXPECT_GE(gap.grid_optimum, gap.closed_form - 1e-12);
}

TEST(GridOptimize, AllNegativeWeightsFillLowestTypes) {
  const GameSpec g = exp_game(0.5, 0.7);
  const auto w = [](double v1, double v2) { return -1.0 - v2 + 0.0 * v1; };
  const auto w2 = [](double v1, double v2) { return -1.0 - v1 + 0.0 * v2; };
  const WeightSpec weights = make_weight_spec(w, w2, g.dist());
  const std::size_t m = 20;
  const DiscreteInstance out = grid_optimize(make_instance(g, m), weights);
  // 0.7 * 20 = 14 full cells, the rest empty.
  for (std::size_t i = 0; i < m; ++i) {
    double mass = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double h = out.at(Player::one, i, j);
      EXPECT_NEAR(h, j < 14 ? 1.0 : 0.0, 1e-12);
      mass += out.weights[j] * h;
    }
    EXPECT_NEAR(mass, 0.7, 1e-12);
  }
}

TEST(GridOptimize, RowsAreStepShaped) {
  for (double alpha : {0.5, 1.5}) {
    const GameSpec g = exp_game(alpha, 0.75);
    for (bool revenue : {false, true}) {
      const WeightSpec w = revenue ? virtual_value_weights(g) : welfare_weights(g);
      const DiscreteInstance out = grid_optimize(make_instance(g, 61), w);
      for (Player p : {Player::one, Player::two}) {
        for (std::size_t own = 0; own < out.size(); ++own) {
          int fractional = 0;
          double previous = 1.0;
          for (std::size_t other = 0; other < out.size(); ++other) {
            const double h = p == Player::one ? out.at(p, own, other) : out.at(p, other, own);
            if (h > 1e-12 && h < 1.0 - 1e-12) ++fractional;
            EXPECT_LE(h, previous + 1e-12);
            previous = h;
          }
          EXPECT_LE(fractional, 1);
        }
      }
    }
  }
}

class OracleConvergence : public ::testing::TestWithParam<std::tuple<double, RuleKind>> {};

TEST_P(OracleConvergence, GapShrinks) {
  const auto [alpha, kind] = GetParam();
  const GameSpec g = exp_game(alpha);
  double previous = INFINITY;
  for (std::size_t m : {21u, 51u, 101u}) {
    const OracleGap gap = oracle_gap(kind, g, m);
    const double abs_gap = std::abs(gap.grid_optimum - gap.closed_form);
    EXPECT_LE(abs_gap, previous + 1e-12) << "m=" << m;
    previous = abs_gap;
    if (m == 101) EXPECT_LT(gap.relative_gap, 1e-3);
  }
}

INSTANTIATE_TEST_SUITE_P(Configs, OracleConvergence,
                         ::testing::Combine(::testing::Values(0.5, 1.0, 1.5),
                                            ::testing::Values(RuleKind::welfare,
                                                              RuleKind::revenue)));

TEST(Deviations, RevenueMechanismClosedForm) {
  const GameSpec g = exp_game(0.5);
  const std::vector<double> nodes = quantile_grid(g.dist(), 41);
  const DeviationReport r = search_double_deviations(
      deviation_table(RuleKind::revenue, g, nodes),
      sample_payments(revenue_payments(g), nodes));
  EXPECT_LE(r.max_regret, 1e-8);
}

TEST(Deviations, QuadratureTableAgrees) {
  const GameSpec g = exp_game(1.5, 0.75);
  const std::vector<double> nodes = quantile_grid(g.dist(), 41);
  const DeviationReport r = search_double_deviations(
      deviation_table(welfare_rule(g), g, nodes), sample_payments(welfare_payments(g), nodes));
  EXPECT_LE(r.max_regret, 1e-8);
}

TEST(Deviations, ZeroPaymentsAreExploited) {
  const GameSpec g = exp_game(0.5);
  const std::vector<double> nodes = quantile_grid(g.dist(), 41);
  const DeviationReport r = search_double_deviations(
      deviation_table(RuleKind::revenue, g, nodes), sample_payments(zero_payments(), nodes));
  EXPECT_GT(r.max_regret, 0.01);
  EXPECT_NE(r.true_type, r.reported_type);
}

TEST(Deviations, SwapUndoesAntiObedientRule) {
  const GameSpec g = exp_game(0.5);
  const DiscreteInstance inst = discretize(constant_rule(0.0, 0.0), g, 15);
  NodePayments zero{std::vector<double>(15, 0.0), std::vector<double>(15, 0.0)};
  const DeviationReport r = search_double_deviations(inst, zero);
  EXPECT_EQ(r.deviation, Deviation::swap);
  // Always-wrong advice, once reversed, is always right: gain v * (1 - 0).
  EXPECT_NEAR(r.max_regret, inst.nodes.back(), 1e-12);
  EXPECT_EQ(r.true_type, inst.nodes.back());
}

TEST(Truthfulness, WelfareRuleWithDiscretePayments) {
  const GameSpec g = exp_game(2.0 / 3.0);
  const DiscreteInstance inst = discretize(welfare_rule(g), g, 41);
  EXPECT_TRUE(check_truthfulness_discrete(inst, discrete_myerson_payments(inst)));
  EXPECT_LE(search_double_deviations(inst, discrete_myerson_payments(inst)).max_regret, 1e-8);
}

TEST(Truthfulness, ConstantPaymentsFail) {
  const GameSpec g = exp_game(0.5);
  const DiscreteInstance inst = discretize(revenue_rule(g), g, 41);
  NodePayments flat{std::vector<double>(41, 0.2), std::vector<double>(41, 0.2)};
  EXPECT_FALSE(check_truthfulness_discrete(inst, flat));
}

TEST(Truthfulness, IrrelevantReports) {
  const GameSpec g = exp_game(0.5);
  const DiscreteInstance inst = discretize(constant_rule(0.8, 0.8), g, 21);
  NodePayments zero{std::vector<double>(21, 0.0), std::vector<double>(21, 0.0)};
  EXPECT_TRUE(check_truthfulness_discrete(inst, zero));
}

TEST(Truthfulness, RegretBoundedByGridSize) {
  // Row averages of node-sampled thresholds miss the interim probabilities by
  // at most 1/(2m) per marginal, so a misreport gains at most
  // (1 + alpha) * v_top / m against continuum envelope payments.
  const std::vector<GameSpec> games{exp_game(0.5), exp_game(1.5, 0.75),
                                    GameSpec(1.5, 0.5, TypeDistribution::uniform(0.0, 1.0))};
  for (const GameSpec& g : games) {
    for (RuleKind kind : {RuleKind::welfare, RuleKind::revenue}) {
      const MarginalRule rule = kind == RuleKind::welfare ? welfare_rule(g) : revenue_rule(g);
      const PaymentSchedule pay =
          kind == RuleKind::welfare ? welfare_payments(g) : revenue_payments(g);
      for (std::size_t m : {21u, 40u, 81u, 160u}) {
        const DiscreteInstance inst = discretize(rule, g, m);
        const double regret =
            search_double_deviations(inst, sample_payments(pay, inst.nodes)).max_regret;
        const double bound = (1.0 + g.alpha()) * inst.nodes.back() / static_cast<double>(m);
        EXPECT_LE(regret, bound + 1e-9)
            << to_string(kind) << " alpha=" << g.alpha() << " m=" << m;
      }
    }
  }
}

TEST(ObedienceDiscrete, Examples) {
  const GameSpec g = exp_game(0.5);
  for (std::size_t m : {21u, 51u, 101u}) {
    EXPECT_TRUE(check_obedience_discrete(discretize(welfare_rule(g), g, m)).obedient);
    // Node sampling rounds the obedience mass; cell projection does not.
    EXPECT_TRUE(check_obedience_discrete(discretize_cells(welfare_rule(exp_game(1.0, 0.75)),
                                                          exp_game(1.0, 0.75), m))
                    .obedient);
  }
  const ObedienceReport fb = check_obedience_discrete(discretize(first_best_revenue_rule(g), g, 41));
  EXPECT_FALSE(fb.obedient);
  EXPECT_LT(fb.worst_type, obedience_threshold(g));
  const ObedienceReport flat = check_obedience_discrete(discretize(constant_rule(0.5, 0.5), g, 21));
  EXPECT_TRUE(flat.obedient);
  EXPECT_NEAR(flat.worst_margin, 0.0, 1e-15);
}

TEST(DeviationNames, Printable) {
  EXPECT_STREQ(to_string(Deviation::identity), "identity");
  EXPECT_STREQ(to_string(Deviation::swap), "swap");
  EXPECT_STREQ(to_string(Deviation::always_zero), "always-0");
  EXPECT_STREQ(to_string(Deviation::always_one), "always-1");
}

}  // namespace
}  // namespace infosale
