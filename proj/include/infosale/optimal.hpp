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

#include "infosale/game.hpp"
#include "infosale/mechanism.hpp"

namespace infosale {

/// Objective weights E[w1(V) h1(V) + w2(V) h2(V)].
///
/// w1(v1, .) and w2(., v2) must be non-increasing. cutoff_v2_star(v1) is
/// sup{v2 : w1(v1, v2) >= 0} (-inf when empty) and cutoff_v1_star(v2) is the
/// mirror image for w2.
struct WeightSpec {
  std::function<double(double v1, double v2)> w1;
  std::function<double(double v1, double v2)> w2;
  std::function<double(double v1)> cutoff_v2_star;
  std::function<double(double v2)> cutoff_v1_star;
};

/// Builds a WeightSpec whose cutoffs are located by bisection over the
/// truncated support of `dist`. A weight that stays non-negative up to the
/// top of the support yields +inf.
WeightSpec make_weight_spec(std::function<double(double, double)> w1,
                            std::function<double(double, double)> w2,
                            const TypeDistribution& dist);

// w_i = v_i - alpha * v_j.
WeightSpec welfare_weights(const GameSpec& g);
// w_i = phi(v_i) - alpha * phi(v_j). Requires a regular distribution.
WeightSpec virtual_value_weights(const GameSpec& g);

/// Maximizes E[h(V) g(V)] over h: support -> [0, 1] subject to E[h(V)] >= c.
/// Returns the threshold of the optimal step h = 1{v <= threshold}, namely
/// max{F^{-1}(c), t_g} with t_g = sup{t : g(t) >= 0}. Throws
/// std::invalid_argument when g increases by more than 1e-9 on the check
/// grid or c lies outside [0, 1].
double variational_solve(const TypeDistribution& dist,
                         const std::function<double(double)>& g, double c);

struct MasterSolution {
  ThresholdRule thresholds;
  MarginalRule rule;
};

/// Obedience-constrained maximizer of a WeightSpec objective: player i is
/// recommended the state iff V_j <= max{v*, cutoff_star(V_i)}.
MasterSolution master_solve(const WeightSpec& weights, const GameSpec& g);

MarginalRule welfare_rule(const GameSpec& g);
MarginalRule revenue_rule(const GameSpec& g);
MarginalRule first_best_welfare_rule(const GameSpec& g);
MarginalRule first_best_revenue_rule(const GameSpec& g);

/// Total, over both players, of the probability mass of own types whose
/// recommendation differs between the two rules for a positive-measure set
/// of opponent types.
double distorted_type_mass(const MarginalRule& constrained,
                           const MarginalRule& unconstrained, const GameSpec& g);

}  // namespace infosale
