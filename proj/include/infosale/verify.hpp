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

// Brute-force oracles over a discretized type space. grid_optimize, the
// deviation search and the discrete obedience check only consume weights,
// marginal matrices and payments; they never consult the closed-form rules.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "infosale/game.hpp"
#include "infosale/mechanism.hpp"
#include "infosale/optimal.hpp"
#include "infosale/payments.hpp"

namespace infosale {

inline constexpr std::size_t kMaxGridSize = 201;

/// Square grid of types with per-node probabilities and the two marginal
/// matrices, stored row-major: h1[i * m + j] = h1(nodes[i], nodes[j]).
struct DiscreteInstance {
  std::vector<double> nodes;
  std::vector<double> weights;
  double prior_theta1 = 0.5;
  double alpha = 0.0;
  std::vector<double> h1;
  std::vector<double> h2;

  std::size_t size() const { return nodes.size(); }
  double p_max() const;
  double& at(Player player, std::size_t i, std::size_t j);
  double at(Player player, std::size_t i, std::size_t j) const;
};

/// Equal-probability nodes quantile((k + 1/2) / m) with weights 1/m and all
/// marginals zero.
DiscreteInstance make_instance(const GameSpec& g, std::size_t m);

/// Instance whose marginals are `rule` evaluated at the grid nodes.
DiscreteInstance discretize(const MarginalRule& rule, const GameSpec& g,
                            std::size_t m);

/// Projects `rule` onto the grid: node k stands for the quantile cell
/// [F^{-1}(k/m), F^{-1}((k+1)/m)], and each entry is the conditional mean of
/// the player's marginal over the opponent's cell with the own type held at
/// its node. Row averages therefore equal the rule's interim probabilities.
DiscreteInstance discretize_cells(const MarginalRule& rule, const GameSpec& g,
                                  std::size_t m);

/// E[w1 h1 + w2 h2] under the grid measure.
double discrete_objective(const DiscreteInstance& inst, const WeightSpec& weights);

/// Maximizes the discrete objective subject to every row constraint
/// sum_j weight_j h_i[.][j] >= p_max. Each row is a fractional knapsack:
/// cells are taken in decreasing weight order (ties to lower opponent types),
/// all non-negative cells first, then the least-negative ones until the row
/// reaches mass p_max. Throws std::invalid_argument for grids above 201 nodes.
DiscreteInstance grid_optimize(const DiscreteInstance& inst,
                               const WeightSpec& weights);

struct OracleGap {
  double grid_optimum = 0.0;
  double closed_form = 0.0;
  double relative_gap = 0.0;
};

/// grid_optimize with welfare or virtual-value weights versus the matching
/// closed-form rule projected onto the same grid by discretize_cells.
OracleGap oracle_gap(RuleKind kind, const GameSpec& g, std::size_t m);

ObedienceReport check_obedience_discrete(const DiscreteInstance& inst);

// Recommendation remappings of a binary action.
enum class Deviation { identity, swap, always_zero, always_one };

const char* to_string(Deviation d);

/// For each player and each reported node, the distribution of
/// (h_own, h_opponent) pairs the report induces, as weighted samples.
struct DeviationTable {
  struct Sample {
    double weight;
    double own_correct;
    double opponent_correct;
  };

  std::vector<double> nodes;
  double prior_theta1 = 0.5;
  double alpha = 0.0;
  // samples[player][report] lists the outcomes facing that report.
  std::array<std::vector<std::vector<Sample>>, 2> samples;
};

// One sample per opponent node, read off the instance's matrices.
DeviationTable deviation_table(const DiscreteInstance& inst);

// One sample per report holding the closed-form interim marginals.
DeviationTable deviation_table(RuleKind kind, const GameSpec& g,
                               std::span<const double> nodes);

// One sample per report holding quadrature interim marginals of `rule`.
DeviationTable deviation_table(const MarginalRule& rule, const GameSpec& g,
                               std::span<const double> nodes);

using NodePayments = std::array<std::vector<double>, 2>;

NodePayments sample_payments(const PaymentSchedule& payments,
                             std::span<const double> nodes);

/// Discrete envelope payments p_k = p_{k-1} + x_k (s_k - s_{k-1}), p_0 = 0,
/// from the instance's interim shares.
NodePayments discrete_myerson_payments(const DiscreteInstance& inst);

struct DeviationReport {
  double max_regret = 0.0;
  Player player = Player::one;
  double true_type = 0.0;
  double reported_type = 0.0;
  Deviation deviation = Deviation::identity;
};

/// Enumerates every player, true type, reported type and remapping, and
/// returns the largest gain over truthful obedient play. Each (report, state,
/// recommendation profile) outcome is weighted by the product joint rule.
DeviationReport search_double_deviations(const DeviationTable& table,
                                         const NodePayments& payments,
                                         bool identity_only = false);

DeviationReport search_double_deviations(const DiscreteInstance& inst,
                                         const NodePayments& payments);

inline constexpr double kRegretTolerance = 1e-8;

/// search_double_deviations restricted to the identity remapping.
bool check_truthfulness_discrete(const DiscreteInstance& inst,
                                 const NodePayments& payments);

}  // namespace infosale
