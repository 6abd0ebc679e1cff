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
#include <vector>

#include "infosale/game.hpp"

namespace infosale {

enum class Provenance {
  welfare_optimal,
  revenue_optimal,
  first_best_welfare,
  first_best_revenue,
  custom,
};

enum class RuleKind { welfare, revenue };

const char* to_string(Provenance p);
const char* to_string(RuleKind k);

/// A recommendation rule described by its marginals
/// h_i(v1, v2) = P[A_i = theta | V = (v1, v2)].
///
/// The break lists feed the quadrature splitter: `opponent_breaks(p, v)`
/// returns the opponent types at which h1 or h2 may jump when player `p`
/// holds type `v`, and `own_breaks` lists own types where interim quantities
/// jump or kink.
struct MarginalRule {
  std::function<double(double v1, double v2)> h1;
  std::function<double(double v1, double v2)> h2;
  Provenance provenance = Provenance::custom;
  std::function<std::vector<double>(Player, double)> opponent_breaks;
  std::vector<double> own_breaks;

  // h of `player` when it holds `own` and the opponent holds `other`.
  double correct(Player player, double own, double other) const;
  // h of the opponent in the same type profile.
  double opponent_correct(Player player, double own, double other) const;
  std::vector<double> breaks_for(Player player, double own) const;
};

// Custom rule with constant marginals.
MarginalRule constant_rule(double h1, double h2);

/// Full recommendation distribution sigma(a; theta, v1, v2) realizing a pair
/// of marginals with independent coordinates.
struct JointRecommendation {
  MarginalRule marginals;

  double sigma(ActionProfile a, State s, double v1, double v2) const;
};

JointRecommendation joint_from_marginals(MarginalRule rule);

/// Deterministic rule h1 = 1{v2 <= cutoff1(v1)}, h2 = 1{v1 <= cutoff2(v2)}.
/// Ties go to the correct recommendation.
struct ThresholdRule {
  std::function<double(double)> cutoff1;
  std::function<double(double)> cutoff2;

  double cutoff(Player player, double own) const {
    return player == Player::one ? cutoff1(own) : cutoff2(own);
  }
};

/// Wraps a threshold rule as a MarginalRule. Opponent breaks are the own
/// cutoff and the generalized inverse of the opponent's cutoff, which must
/// be non-decreasing.
MarginalRule to_marginal_rule(ThresholdRule rule, const TypeDistribution& dist,
                              Provenance provenance,
                              std::vector<double> own_breaks = {});

/// E[h_i(V) | V_i = v] - p_max. The rule is obedient at v iff this is >= 0.
double obedience_margin(const MarginalRule& rule, const GameSpec& g,
                        Player player, double v);

struct ObedienceReport {
  bool obedient = true;
  Player worst_player = Player::one;
  double worst_type = 0.0;
  double worst_margin = 0.0;
};

inline constexpr double kObedienceTolerance = 1e-9;

/// Checks obedience_margin >= -1e-9 for both players on `grid`
/// equal-probability types.
ObedienceReport is_obedient(const MarginalRule& rule, const GameSpec& g,
                            std::size_t grid);

/// Interim share E[h_i | V_i = v] - alpha * E[h_j | V_i = v] by quadrature.
double interim_share(const MarginalRule& rule, const GameSpec& g, Player player,
                     double v);

// Interim probabilities of correct recommendations given V_i = v.
struct InterimMarginals {
  double own_correct = 0.0;
  double opponent_correct = 0.0;
};

InterimMarginals interim_marginals(const MarginalRule& rule, const GameSpec& g,
                                   Player player, double v);

/// Opponent cutoff of the obedience-free rule of the given kind: v / alpha
/// for welfare, phi^{-1}(phi(v) / alpha) for revenue. At alpha = 0 it
/// saturates to +inf when the numerator is >= 0 and to -inf otherwise.
double unconstrained_cutoff(RuleKind kind, const GameSpec& g, double own);

/// Opponent type above which the opponent is denied the state once own type
/// exceeds v*: alpha * v for welfare, phi^{-1}(alpha * phi(v)) for revenue.
double exclusion_point(RuleKind kind, const GameSpec& g, double own);

/// Closed-form interim marginals of the welfare- or revenue-optimal rule.
/// Throws std::domain_error for the revenue kind on non-regular types.
InterimMarginals closed_form_marginals(RuleKind kind, const GameSpec& g,
                                       double v);

/// max{F(v*), F(c(v))} + alpha * 1{v > v*} * F(x(v)) - alpha, with c the
/// unconstrained cutoff and x the exclusion point.
double closed_form_interim_share(RuleKind kind, const GameSpec& g, double v);

/// Own types where the closed-form interim share jumps or kinks.
std::vector<double> share_breaks(RuleKind kind, const GameSpec& g);

}  // namespace infosale
