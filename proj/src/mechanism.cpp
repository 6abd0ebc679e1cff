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

#include "infosale/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "infosale/quadrature.hpp"

namespace infosale {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_regular(const TypeDistribution& dist) {
  if (!dist.is_regular()) {
    throw std::domain_error("revenue rule requires a regular type distribution");
  }
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::welfare_optimal: return "welfare-optimal";
    case Provenance::revenue_optimal: return "revenue-optimal";
    case Provenance::first_best_welfare: return "first-best-welfare";
    case Provenance::first_best_revenue: return "first-best-revenue";
    case Provenance::custom: return "custom";
  }
  return "unknown";
}

const char* to_string(RuleKind k) {
  return k == RuleKind::welfare ? "welfare" : "revenue";
}

double MarginalRule::correct(Player player, double own, double other) const {
  return player == Player::one ? h1(own, other) : h2(other, own);
}

double MarginalRule::opponent_correct(Player player, double own,
                                      double other) const {
  return player == Player::one ? h2(own, other) : h1(other, own);
}

std::vector<double> MarginalRule::breaks_for(Player player, double own) const {
  if (!opponent_breaks) return {};
  return opponent_breaks(player, own);
}

MarginalRule constant_rule(double h1, double h2) {
  if (!(h1 >= 0.0 && h1 <= 1.0 && h2 >= 0.0 && h2 <= 1.0)) {
    throw std::invalid_argument("marginals must lie in [0, 1]");
  }
  MarginalRule rule;
  rule.h1 = [h1](double, double) { return h1; };
  rule.h2 = [h2](double, double) { return h2; };
  return rule;
}

double JointRecommendation::sigma(ActionProfile a, State s, double v1,
                                  double v2) const {
  const double p1 = marginals.h1(v1, v2);
  const double p2 = marginals.h2(v1, v2);
  const double first = a.a1 == s.theta ? p1 : 1.0 - p1;
  const double second = a.a2 == s.theta ? p2 : 1.0 - p2;
  return first * second;
}

JointRecommendation joint_from_marginals(MarginalRule rule) {
  return JointRecommendation{std::move(rule)};
}

MarginalRule to_marginal_rule(ThresholdRule rule, const TypeDistribution& dist,
                              Provenance provenance,
                              std::vector<double> own_breaks) {
  MarginalRule out;
  out.provenance = provenance;
  out.own_breaks = std::move(own_breaks);
  out.h1 = [c = rule.cutoff1](double v1, double v2) {
    return v2 <= c(v1) ? 1.0 : 0.0;
  };
  out.h2 = [c = rule.cutoff2](double v1, double v2) {
    return v1 <= c(v2) ? 1.0 : 0.0;
  };
  const double lo = dist.support_lo();
  const double hi = dist.truncated_hi();
  out.opponent_breaks = [rule, lo, hi](Player player, double own) {
    std::vector<double> breaks{rule.cutoff(player, own)};
    // Opponent types x with own <= cutoff(opponent, x) form an up-set.
    const Player other = opponent(player);
    const auto below = [&](double x) { return rule.cutoff(other, x) < own; };
    if (below(lo) && !below(hi)) breaks.push_back(bisect_boundary(below, lo, hi));
    return breaks;
  };
  return out;
}

InterimMarginals interim_marginals(const MarginalRule& rule, const GameSpec& g,
                                   Player player, double v) {
  const std::vector<double> breaks = rule.breaks_for(player, v);
  InterimMarginals m;
  m.own_correct = expectation(
      g.dist(), [&](double x) { return rule.correct(player, v, x); }, breaks);
  m.opponent_correct = expectation(
      g.dist(), [&](double x) { return rule.opponent_correct(player, v, x); },
      breaks);
  return m;
}

double obedience_margin(const MarginalRule& rule, const GameSpec& g,
                        Player player, double v) {
  const std::vector<double> breaks = rule.breaks_for(player, v);
  const double correct = expectation(
      g.dist(), [&](double x) { return rule.correct(player, v, x); }, breaks);
  return correct - g.p_max();
}

ObedienceReport is_obedient(const MarginalRule& rule, const GameSpec& g,
                            std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("obedience grid needs >= 2 types");
  ObedienceReport report;
  report.worst_margin = kInf;
  for (Player player : {Player::one, Player::two}) {
    for (double v : quantile_grid(g.dist(), grid)) {
      const double margin = obedience_margin(rule, g, player, v);
      if (margin < report.worst_margin) {
        report.worst_margin = margin;
        report.worst_player = player;
        report.worst_type = v;
      }
    }
  }
  report.obedient = report.worst_margin >= -kObedienceTolerance;
  return report;
}

double interim_share(const MarginalRule& rule, const GameSpec& g, Player player,
                     double v) {
  const std::vector<double> breaks = rule.breaks_for(player, v);
  const double alpha = g.alpha();
  return expectation(
      g.dist(),
      [&](double x) {
        return rule.correct(player, v, x) -
               alpha * rule.opponent_correct(player, v, x);
      },
      breaks);
}

double unconstrained_cutoff(RuleKind kind, const GameSpec& g, double own) {
  const double alpha = g.alpha();
  const TypeDistribution& dist = g.dist();
  const double numerator = kind == RuleKind::welfare ? own : dist.virtual_value(own);
  if (alpha == 0.0) return numerator >= 0.0 ? kInf : -kInf;
  if (kind == RuleKind::welfare) return own / alpha;
  return dist.inverse_virtual_value(numerator / alpha);
}

double exclusion_point(RuleKind kind, const GameSpec& g, double own) {
  const double alpha = g.alpha();
  if (kind == RuleKind::welfare) return alpha * own;
  return g.dist().inverse_virtual_value(alpha * g.dist().virtual_value(own));
}

InterimMarginals closed_form_marginals(RuleKind kind, const GameSpec& g,
                                       double v) {
  const TypeDistribution& dist = g.dist();
  if (kind == RuleKind::revenue) require_regular(dist);
  const double v_star = obedience_threshold(g);
  InterimMarginals m;
  m.own_correct =
      std::max(dist.cdf(v_star), dist.cdf(unconstrained_cutoff(kind, g, v)));
  m.opponent_correct =
      v > v_star ? 1.0 - dist.cdf(exclusion_point(kind, g, v)) : 1.0;
  return m;
}

double closed_form_interim_share(RuleKind kind, const GameSpec& g, double v) {
  const InterimMarginals m = closed_form_marginals(kind, g, v);
  return m.own_correct - g.alpha() * m.opponent_correct;
}

std::vector<double> share_breaks(RuleKind kind, const GameSpec& g) {
  const TypeDistribution& dist = g.dist();
  const double alpha = g.alpha();
  const double v_star = obedience_threshold(g);
  std::vector<double> breaks{v_star};
  if (alpha == 0.0) {
    if (kind == RuleKind::welfare) breaks.push_back(0.0);
    else breaks.push_back(dist.inverse_virtual_value(0.0));
    return breaks;
  }
  const double top = dist.truncated_hi();
  if (kind == RuleKind::welfare) {
    breaks.insert(breaks.end(), {alpha * v_star, alpha * top, top / alpha});
    return breaks;
  }
  require_regular(dist);
  const double phi_lo = dist.virtual_value(dist.support_lo());
  const double phi_hi = dist.virtual_value(top);
  for (double x : {alpha * dist.virtual_value(v_star), 0.0, alpha * phi_lo,
                   alpha * phi_hi, phi_lo / alpha, phi_hi / alpha}) {
    breaks.push_back(dist.inverse_virtual_value(x));
  }
  return breaks;
}

}  // namespace infosale
