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

#include "infosale/payments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "infosale/quadrature.hpp"

namespace infosale {
namespace {

constexpr double kMonotoneSlack = 1e-9;
constexpr std::size_t kMonotoneGrid = 65;

void require_non_decreasing(const ShareFunction& share, double lo, double hi) {
  if (!(hi > lo)) return;
  const std::vector<double> grid = linear_grid(lo, hi, kMonotoneGrid);
  double previous = share(grid.front());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double current = share(grid[k]);
    if (current < previous - kMonotoneSlack) {
      throw std::invalid_argument("interim share must be non-decreasing");
    }
    previous = current;
  }
}

double envelope(const ShareFunction& share, double lo, double base, double v,
                std::span<const double> breaks) {
  const double integral = integrate(share, lo, v, breaks);
  return v * share(v) - lo * share(lo) + base - integral;
}

}  // namespace

double myerson_payment(const ShareFunction& share, const TypeDistribution& dist,
                       double base_payment, double v,
                       std::span<const double> breaks) {
  const double lo = dist.support_lo();
  require_non_decreasing(share, lo, v);
  return envelope(share, lo, base_payment, v, breaks);
}

PaymentSchedule myerson_schedule(ShareFunction share, const TypeDistribution& dist,
                                 double base_payment, PaymentKind kind,
                                 std::vector<double> breaks) {
  const double lo = dist.support_lo();
  require_non_decreasing(share, lo, dist.truncated_hi());
  PaymentSchedule out;
  out.base_type_payment = base_payment;
  out.rule_kind = kind;
  out.interim_payment = [share = std::move(share), lo, base_payment,
                         breaks = std::move(breaks)](double v) {
    return envelope(share, lo, base_payment, v, breaks);
  };
  return out;
}

double revenue_optimal_payment(const GameSpec& g, double v) {
  return revenue_payments(g)(v);
}

PaymentSchedule revenue_payments(const GameSpec& g) {
  const double lo = g.dist().support_lo();
  ShareFunction share = [g](double v) {
    return closed_form_interim_share(RuleKind::revenue, g, v);
  };
  // Binding participation at the lowest type: p(lo) = lo * (share(lo) - K).
  const double base = lo * (share(lo) - outside_option_share(g));
  return myerson_schedule(std::move(share), g.dist(), base, PaymentKind::revenue,
                          share_breaks(RuleKind::revenue, g));
}

PaymentSchedule welfare_payments(const GameSpec& g) {
  ShareFunction share = [g](double v) {
    return closed_form_interim_share(RuleKind::welfare, g, v);
  };
  return myerson_schedule(std::move(share), g.dist(), 0.0, PaymentKind::welfare,
                          share_breaks(RuleKind::welfare, g));
}

PaymentSchedule zero_payments() {
  return PaymentSchedule{[](double) { return 0.0; }, 0.0, PaymentKind::custom};
}

PaymentSchedule shifted(PaymentSchedule payments, double delta) {
  auto inner = std::move(payments.interim_payment);
  payments.interim_payment = [inner = std::move(inner), delta](double v) {
    return inner(v) + delta;
  };
  payments.base_type_payment += delta;
  payments.rule_kind = PaymentKind::custom;
  return payments;
}

RevenueReport expected_revenue(const GameSpec& g, const MarginalRule& rule,
                               const PaymentSchedule& payments) {
  const TypeDistribution& dist = g.dist();
  const double lo = dist.support_lo();
  RevenueReport report;

  const double per_buyer = expectation(dist, payments.interim_payment, rule.own_breaks);
  report.direct = 2.0 * per_buyer;

  const double base = payments(lo);
  for (Player player : {Player::one, Player::two}) {
    const auto share = [&](double v) { return interim_share(rule, g, player, v); };
    const double surplus = expectation(
        dist, [&](double v) { return dist.virtual_value(v) * share(v); },
        rule.own_breaks);
    report.virtual_surplus += surplus - (lo * share(lo) - base);
  }

  const double scale = std::max(std::abs(report.direct), std::abs(report.virtual_surplus));
  report.consistent = std::abs(report.direct - report.virtual_surplus) <=
                      kRevenueIdentityTolerance * std::max(scale, 1e-12);
  return report;
}

double expected_welfare(const GameSpec& g, const MarginalRule& rule) {
  const TypeDistribution& dist = g.dist();
  const double alpha = g.alpha();
  return expectation(
      dist,
      [&](double v1) {
        const std::vector<double> breaks = rule.breaks_for(Player::one, v1);
        return expectation(
            dist,
            [&](double v2) {
              return (v1 - alpha * v2) * rule.h1(v1, v2) +
                     (v2 - alpha * v1) * rule.h2(v1, v2);
            },
            breaks);
      },
      rule.own_breaks);
}

RationalityReport check_individual_rationality(const GameSpec& g,
                                               const ShareFunction& share,
                                               const PaymentSchedule& payments,
                                               std::size_t grid) {
  const double lo = g.dist().support_lo();
  const double outside = outside_option_share(g);
  RationalityReport report;
  report.lowest_type_slack = lo * (share(lo) - outside) - payments(lo);
  report.lowest_type_ok = report.lowest_type_slack >= -1e-12;

  std::vector<double> types{lo};
  for (double v : quantile_grid(g.dist(), grid)) types.push_back(v);
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (double v : types) {
    const double slack = v * share(v) - payments(v) - v * outside;
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_type = v;
    }
  }
  report.individually_rational =
      report.lowest_type_ok && report.worst_slack >= -1e-9;
  return report;
}

}  // namespace infosale
