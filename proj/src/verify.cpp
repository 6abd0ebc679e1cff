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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "infosale/quadrature.hpp"

namespace infosale {
namespace {

constexpr std::array<Deviation, 4> kDeviations{
    Deviation::identity, Deviation::swap, Deviation::always_zero,
    Deviation::always_one};

std::size_t index(Player p) { return p == Player::one ? 0 : 1; }

int apply(Deviation d, int action) {
  switch (d) {
    case Deviation::identity: return action;
    case Deviation::swap: return 1 - action;
    case Deviation::always_zero: return 0;
    case Deviation::always_one: return 1;
  }
  return action;
}

// Expected share of a buyer who remaps its recommendation through `d` when
// the joint rule has independent coordinates with the given marginals.
double deviation_share(double own_correct, double opponent_correct,
                       double prior_theta1, double alpha, Deviation d) {
  double share = 0.0;
  for (int theta : {0, 1}) {
    const double p_theta = theta == 1 ? prior_theta1 : 1.0 - prior_theta1;
    for (int own : {0, 1}) {
      const double p_own = own == theta ? own_correct : 1.0 - own_correct;
      for (int other : {0, 1}) {
        const double p_other =
            other == theta ? opponent_correct : 1.0 - opponent_correct;
        const double payoff = (apply(d, own) == theta ? 1.0 : 0.0) -
                              alpha * (other == theta ? 1.0 : 0.0);
        share += p_theta * p_own * p_other * payoff;
      }
    }
  }
  return share;
}

void require_size(std::size_t m) {
  if (m < 2 || m > kMaxGridSize) {
    throw std::invalid_argument("grid size must lie in [2, 201]");
  }
}

// Interim shares of `player` at every reported node under identity play.
std::vector<double> node_shares(const DeviationTable& table, Player player) {
  std::vector<double> shares;
  for (const auto& outcomes : table.samples[index(player)]) {
    double s = 0.0;
    for (const auto& o : outcomes) {
      s += o.weight * deviation_share(o.own_correct, o.opponent_correct,
                                      table.prior_theta1, table.alpha,
                                      Deviation::identity);
    }
    shares.push_back(s);
  }
  return shares;
}

}  // namespace

const char* to_string(Deviation d) {
  switch (d) {
    case Deviation::identity: return "identity";
    case Deviation::swap: return "swap";
    case Deviation::always_zero: return "always-0";
    case Deviation::always_one: return "always-1";
  }
  return "unknown";
}

double DiscreteInstance::p_max() const {
  return std::max(prior_theta1, 1.0 - prior_theta1);
}

double& DiscreteInstance::at(Player player, std::size_t i, std::size_t j) {
  auto& h = player == Player::one ? h1 : h2;
  return h[i * nodes.size() + j];
}

double DiscreteInstance::at(Player player, std::size_t i, std::size_t j) const {
  const auto& h = player == Player::one ? h1 : h2;
  return h[i * nodes.size() + j];
}

DiscreteInstance make_instance(const GameSpec& g, std::size_t m) {
  require_size(m);
  DiscreteInstance inst;
  inst.nodes = quantile_grid(g.dist(), m);
  inst.weights.assign(m, 1.0 / static_cast<double>(m));
  inst.prior_theta1 = g.prior_theta1();
  inst.alpha = g.alpha();
  inst.h1.assign(m * m, 0.0);
  inst.h2.assign(m * m, 0.0);
  return inst;
}

DiscreteInstance discretize(const MarginalRule& rule, const GameSpec& g,
                            std::size_t m) {
  DiscreteInstance inst = make_instance(g, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      inst.at(Player::one, i, j) = rule.h1(inst.nodes[i], inst.nodes[j]);
      inst.at(Player::two, i, j) = rule.h2(inst.nodes[i], inst.nodes[j]);
    }
  }
  return inst;
}

DiscreteInstance discretize_cells(const MarginalRule& rule, const GameSpec& g,
                                  std::size_t m) {
  DiscreteInstance inst = make_instance(g, m);
  const TypeDistribution& dist = g.dist();
  std::vector<double> edges;
  for (std::size_t k = 0; k <= m; ++k) {
    edges.push_back(dist.quantile(static_cast<double>(k) / static_cast<double>(m)));
  }
  edges.front() = dist.support_lo();
  edges.back() = dist.truncated_hi();

  // Conditional mean of h over the opponent's cell, own type at the node.
  const auto cell_mean = [&](Player player, double own, std::size_t cell) {
    const double a = edges[cell];
    const double b = edges[cell + 1];
    const double mass = dist.cdf(b) - dist.cdf(a);
    if (!(mass > 0.0)) return rule.correct(player, own, inst.nodes[cell]);
    const std::vector<double> breaks = rule.breaks_for(player, own);
    const double integral = integrate(
        [&](double x) { return rule.correct(player, own, x) * dist.pdf(x); }, a, b,
        breaks);
    return std::clamp(integral / mass, 0.0, 1.0);
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      inst.at(Player::one, i, j) = cell_mean(Player::one, inst.nodes[i], j);
      inst.at(Player::two, i, j) = cell_mean(Player::two, inst.nodes[j], i);
    }
  }
  return inst;
}

double discrete_objective(const DiscreteInstance& inst, const WeightSpec& weights) {
  const std::size_t m = inst.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double v1 = inst.nodes[i];
      const double v2 = inst.nodes[j];
      total += inst.weights[i] * inst.weights[j] *
               (weights.w1(v1, v2) * inst.at(Player::one, i, j) +
                weights.w2(v1, v2) * inst.at(Player::two, i, j));
    }
  }
  return total;
}

DiscreteInstance grid_optimize(const DiscreteInstance& inst,
                               const WeightSpec& weights) {
  const std::size_t m = inst.size();
  require_size(m);
  const double mu = inst.p_max();
  if (mu > 1.0) throw std::invalid_argument("row constraint above 1 is infeasible");

  DiscreteInstance out = inst;
  std::vector<double> value(m);
  std::vector<std::size_t> order(m);
  for (Player player : {Player::one, Player::two}) {
    for (std::size_t own = 0; own < m; ++own) {
      for (std::size_t other = 0; other < m; ++other) {
        const double v_own = inst.nodes[own];
        const double v_other = inst.nodes[other];
        value[other] = player == Player::one ? weights.w1(v_own, v_other)
                                             : weights.w2(v_other, v_own);
      }
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });

      double mass = 0.0;
      for (std::size_t other : order) {
        const double w = inst.weights[other];
        double fill = 0.0;
        if (value[other] >= 0.0) {
          fill = 1.0;
        } else if (mass < mu) {
          fill = std::min(1.0, (mu - mass) / w);
        }
        mass += fill * w;
        // Player 1 owns rows, player 2 owns columns.
        if (player == Player::one) {
          out.at(Player::one, own, other) = fill;
        } else {
          out.at(Player::two, other, own) = fill;
        }
      }
    }
  }
  return out;
}

OracleGap oracle_gap(RuleKind kind, const GameSpec& g, std::size_t m) {
  const WeightSpec weights =
      kind == RuleKind::welfare ? welfare_weights(g) : virtual_value_weights(g);
  const MarginalRule rule = kind == RuleKind::welfare ? welfare_rule(g) : revenue_rule(g);
  OracleGap gap;
  gap.grid_optimum = discrete_objective(grid_optimize(make_instance(g, m), weights), weights);
  gap.closed_form = discrete_objective(discretize_cells(rule, g, m), weights);
  gap.relative_gap = std::abs(gap.grid_optimum - gap.closed_form) /
                     std::max(std::abs(gap.grid_optimum), 1e-12);
  return gap;
}

ObedienceReport check_obedience_discrete(const DiscreteInstance& inst) {
  const std::size_t m = inst.size();
  const double mu = inst.p_max();
  ObedienceReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (Player player : {Player::one, Player::two}) {
    for (std::size_t own = 0; own < m; ++own) {
      double correct = 0.0;
      for (std::size_t other = 0; other < m; ++other) {
        const double h = player == Player::one ? inst.at(Player::one, own, other)
                                               : inst.at(Player::two, other, own);
        correct += inst.weights[other] * h;
      }
      if (correct - mu < report.worst_margin) {
        report.worst_margin = correct - mu;
        report.worst_player = player;
        report.worst_type = inst.nodes[own];
      }
    }
  }
  report.obedient = report.worst_margin >= -kObedienceTolerance;
  return report;
}

DeviationTable deviation_table(const DiscreteInstance& inst) {
  const std::size_t m = inst.size();
  DeviationTable table;
  table.nodes = inst.nodes;
  table.prior_theta1 = inst.prior_theta1;
  table.alpha = inst.alpha;
  for (Player player : {Player::one, Player::two}) {
    auto& per_report = table.samples[index(player)];
    per_report.resize(m);
    for (std::size_t report = 0; report < m; ++report) {
      for (std::size_t other = 0; other < m; ++other) {
        const std::size_t i = player == Player::one ? report : other;
        const std::size_t j = player == Player::one ? other : report;
        per_report[report].push_back(
            {inst.weights[other], inst.at(player, i, j),
             inst.at(opponent(player), i, j)});
      }
    }
  }
  return table;
}

DeviationTable deviation_table(RuleKind kind, const GameSpec& g,
                               std::span<const double> nodes) {
  DeviationTable table;
  table.nodes.assign(nodes.begin(), nodes.end());
  table.prior_theta1 = g.prior_theta1();
  table.alpha = g.alpha();
  for (auto& per_report : table.samples) {
    for (double v : nodes) {
      const InterimMarginals m = closed_form_marginals(kind, g, v);
      per_report.push_back({{1.0, m.own_correct, m.opponent_correct}});
    }
  }
  return table;
}

DeviationTable deviation_table(const MarginalRule& rule, const GameSpec& g,
                               std::span<const double> nodes) {
  DeviationTable table;
  table.nodes.assign(nodes.begin(), nodes.end());
  table.prior_theta1 = g.prior_theta1();
  table.alpha = g.alpha();
  for (Player player : {Player::one, Player::two}) {
    auto& per_report = table.samples[index(player)];
    for (double v : nodes) {
      const InterimMarginals m = interim_marginals(rule, g, player, v);
      per_report.push_back({{1.0, m.own_correct, m.opponent_correct}});
    }
  }
  return table;
}

NodePayments sample_payments(const PaymentSchedule& payments,
                             std::span<const double> nodes) {
  std::vector<double> values;
  values.reserve(nodes.size());
  for (double v : nodes) values.push_back(payments(v));
  return {values, values};
}

NodePayments discrete_myerson_payments(const DiscreteInstance& inst) {
  const DeviationTable table = deviation_table(inst);
  NodePayments out;
  for (Player player : {Player::one, Player::two}) {
    const std::vector<double> shares = node_shares(table, player);
    auto& pay = out[index(player)];
    pay.assign(shares.size(), 0.0);
    for (std::size_t k = 1; k < shares.size(); ++k) {
      pay[k] = pay[k - 1] + inst.nodes[k] * (shares[k] - shares[k - 1]);
    }
  }
  return out;
}

DeviationReport search_double_deviations(const DeviationTable& table,
                                         const NodePayments& payments,
                                         bool identity_only) {
  const std::size_t m = table.nodes.size();
  DeviationReport worst;
  worst.max_regret = -std::numeric_limits<double>::infinity();
  for (Player player : {Player::one, Player::two}) {
    const auto& per_report = table.samples[index(player)];
    const auto& pay = payments[index(player)];
    if (per_report.size() != m || pay.size() != m) {
      throw std::invalid_argument("deviation table and payments disagree in size");
    }
    // shares[report][deviation]
    std::vector<std::array<double, 4>> shares(m);
    for (std::size_t report = 0; report < m; ++report) {
      for (std::size_t d = 0; d < kDeviations.size(); ++d) {
        double s = 0.0;
        for (const auto& o : per_report[report]) {
          s += o.weight * deviation_share(o.own_correct, o.opponent_correct,
                                          table.prior_theta1, table.alpha,
                                          kDeviations[d]);
        }
        shares[report][d] = s;
      }
    }
    for (std::size_t truth = 0; truth < m; ++truth) {
      const double v = table.nodes[truth];
      const double honest = v * shares[truth][0] - pay[truth];
      for (std::size_t report = 0; report < m; ++report) {
        const std::size_t last = identity_only ? 1 : kDeviations.size();
        for (std::size_t d = 0; d < last; ++d) {
          const double regret = v * shares[report][d] - pay[report] - honest;
          if (regret > worst.max_regret) {
            worst = {regret, player, v, table.nodes[report], kDeviations[d]};
          }
        }
      }
    }
  }
  return worst;
}

DeviationReport search_double_deviations(const DiscreteInstance& inst,
                                         const NodePayments& payments) {
  return search_double_deviations(deviation_table(inst), payments);
}

bool check_truthfulness_discrete(const DiscreteInstance& inst,
                                 const NodePayments& payments) {
  return search_double_deviations(deviation_table(inst), payments, true).max_regret <=
         kRegretTolerance;
}

}  // namespace infosale
