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

#include "infosale/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "infosale/quadrature.hpp"

namespace infosale {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMonotoneSlack = 1e-9;
constexpr std::size_t kMonotoneGrid = 257;
constexpr std::size_t kWeightCheckGrid = 33;
// Distortion is flagged where the disagreement probability exceeds this.
constexpr double kDistortionFloor = 1e-12;

// sup{x in [lo, hi] : nonneg(x)} for a predicate that holds on a down-set.
double last_nonnegative(const std::function<bool(double)>& nonneg, double lo,
                        double hi) {
  if (!nonneg(lo)) return -kInf;
  if (nonneg(hi)) return kInf;
  return bisect_boundary(nonneg, lo, hi);
}

void require_regular(const TypeDistribution& dist) {
  if (!dist.is_regular()) {
    throw std::domain_error("revenue rule requires a regular type distribution");
  }
}

ThresholdRule floored(const GameSpec& g, RuleKind kind) {
  const double v_star = obedience_threshold(g);
  auto cutoff = [g, v_star, kind](double own) {
    return std::max(v_star, unconstrained_cutoff(kind, g, own));
  };
  return ThresholdRule{cutoff, cutoff};
}

ThresholdRule unfloored(const GameSpec& g, RuleKind kind) {
  auto cutoff = [g, kind](double own) { return unconstrained_cutoff(kind, g, own); };
  return ThresholdRule{cutoff, cutoff};
}

}  // namespace

WeightSpec make_weight_spec(std::function<double(double, double)> w1,
                            std::function<double(double, double)> w2,
                            const TypeDistribution& dist) {
  const double lo = dist.support_lo();
  const double hi = dist.truncated_hi();
  WeightSpec spec;
  spec.cutoff_v2_star = [w1, lo, hi](double v1) {
    return last_nonnegative([&](double v2) { return w1(v1, v2) >= 0.0; }, lo, hi);
  };
  spec.cutoff_v1_star = [w2, lo, hi](double v2) {
    return last_nonnegative([&](double v1) { return w2(v1, v2) >= 0.0; }, lo, hi);
  };
  spec.w1 = std::move(w1);
  spec.w2 = std::move(w2);
  return spec;
}

WeightSpec welfare_weights(const GameSpec& g) {
  const double alpha = g.alpha();
  return make_weight_spec(
      [alpha](double v1, double v2) { return v1 - alpha * v2; },
      [alpha](double v1, double v2) { return v2 - alpha * v1; }, g.dist());
}

WeightSpec virtual_value_weights(const GameSpec& g) {
  require_regular(g.dist());
  const double alpha = g.alpha();
  const TypeDistribution dist = g.dist();
  return make_weight_spec(
      [alpha, dist](double v1, double v2) {
        return dist.virtual_value(v1) - alpha * dist.virtual_value(v2);
      },
      [alpha, dist](double v1, double v2) {
        return dist.virtual_value(v2) - alpha * dist.virtual_value(v1);
      },
      dist);
}

double variational_solve(const TypeDistribution& dist,
                         const std::function<double(double)>& g, double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("obedience level c must lie in [0, 1]");
  }
  const double lo = dist.support_lo();
  const double hi = dist.truncated_hi();
  const std::vector<double> grid = linear_grid(lo, hi, kMonotoneGrid);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (g(grid[k + 1]) - g(grid[k]) > kMonotoneSlack) {
      throw std::invalid_argument("weight function must be non-increasing");
    }
  }
  // g need not be continuous: bracket the sign change instead of solving g=0.
  double t_g = last_nonnegative([&](double t) { return g(t) >= 0.0; }, lo, hi);
  t_g = std::min(t_g, hi);
  return std::max(dist.quantile(c), t_g);
}

MasterSolution master_solve(const WeightSpec& weights, const GameSpec& g) {
  const std::vector<double> nodes = quantile_grid(g.dist(), kWeightCheckGrid);
  for (double own : nodes) {
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const bool w1_rises =
          weights.w1(own, nodes[k + 1]) - weights.w1(own, nodes[k]) > kMonotoneSlack;
      const bool w2_rises =
          weights.w2(nodes[k + 1], own) - weights.w2(nodes[k], own) > kMonotoneSlack;
      if (w1_rises || w2_rises) {
        throw std::invalid_argument(
            "weights must be non-increasing in the opponent's type");
      }
    }
  }
  const double v_star = obedience_threshold(g);
  ThresholdRule thresholds{
      [v_star, c = weights.cutoff_v2_star](double v1) { return std::max(v_star, c(v1)); },
      [v_star, c = weights.cutoff_v1_star](double v2) { return std::max(v_star, c(v2)); },
  };
  MarginalRule rule =
      to_marginal_rule(thresholds, g.dist(), Provenance::custom, {v_star});
  return MasterSolution{std::move(thresholds), std::move(rule)};
}

MarginalRule welfare_rule(const GameSpec& g) {
  return to_marginal_rule(floored(g, RuleKind::welfare), g.dist(),
                          Provenance::welfare_optimal,
                          share_breaks(RuleKind::welfare, g));
}

MarginalRule revenue_rule(const GameSpec& g) {
  require_regular(g.dist());
  return to_marginal_rule(floored(g, RuleKind::revenue), g.dist(),
                          Provenance::revenue_optimal,
                          share_breaks(RuleKind::revenue, g));
}

MarginalRule first_best_welfare_rule(const GameSpec& g) {
  return to_marginal_rule(unfloored(g, RuleKind::welfare), g.dist(),
                          Provenance::first_best_welfare,
                          share_breaks(RuleKind::welfare, g));
}

MarginalRule first_best_revenue_rule(const GameSpec& g) {
  require_regular(g.dist());
  MarginalRule rule = to_marginal_rule(unfloored(g, RuleKind::revenue), g.dist(),
                                       Provenance::first_best_revenue,
                                       share_breaks(RuleKind::revenue, g));
  // Compare virtual values directly rather than through the clamped inverse.
  const double alpha = g.alpha();
  const TypeDistribution dist = g.dist();
  auto favoured = [alpha, dist](double own, double other) {
    const double own_phi = dist.virtual_value(own);
    if (alpha == 0.0) return own_phi >= 0.0 ? 1.0 : 0.0;
    return dist.virtual_value(other) <= own_phi / alpha ? 1.0 : 0.0;
  };
  rule.h1 = [favoured](double v1, double v2) { return favoured(v1, v2); };
  rule.h2 = [favoured](double v1, double v2) { return favoured(v2, v1); };
  return rule;
}

double distorted_type_mass(const MarginalRule& constrained,
                           const MarginalRule& unconstrained, const GameSpec& g) {
  const TypeDistribution& dist = g.dist();
  const double lo = dist.support_lo();
  const double hi = dist.truncated_hi();

  double total = 0.0;
  for (Player player : {Player::one, Player::two}) {
    const auto distorted = [&](double v) {
      std::vector<double> breaks = constrained.breaks_for(player, v);
      const std::vector<double> more = unconstrained.breaks_for(player, v);
      breaks.insert(breaks.end(), more.begin(), more.end());
      const double gap = expectation(
          dist,
          [&](double x) {
            return std::abs(constrained.correct(player, v, x) -
                            unconstrained.correct(player, v, x));
          },
          breaks);
      return gap > kDistortionFloor;
    };

    std::vector<double> probes{lo};
    for (double v : quantile_grid(dist, 400)) probes.push_back(v);
    probes.push_back(hi);

    double start = distorted(lo) ? lo : kInf;
    for (std::size_t k = 0; k + 1 < probes.size(); ++k) {
      const bool here = start != kInf;
      const bool next = distorted(probes[k + 1]);
      if (here == next) continue;
      const double edge =
          here ? bisect_boundary(distorted, probes[k], probes[k + 1])
               : bisect_boundary([&](double v) { return !distorted(v); },
                                 probes[k], probes[k + 1]);
      if (here) {
        total += dist.cdf(edge) - dist.cdf(start);
        start = kInf;
      } else {
        start = edge;
      }
    }
    if (start != kInf) total += dist.cdf(hi) - dist.cdf(start);
  }
  return total / (dist.cdf(hi) - dist.cdf(lo));
}

}  // namespace infosale
