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
#include <span>
#include <vector>

#include "infosale/game.hpp"
#include "infosale/mechanism.hpp"

namespace infosale {

using ShareFunction = std::function<double(double)>;

enum class PaymentKind { welfare, revenue, custom };

/// Interim payment p(v) charged to a buyer reporting v. Both buyers face the
/// same schedule.
struct PaymentSchedule {
  std::function<double(double)> interim_payment;
  double base_type_payment = 0.0;
  PaymentKind rule_kind = PaymentKind::custom;

  double operator()(double v) const { return interim_payment(v); }
};

/// Envelope payment
///   p(v) = v * share(v) - lo * share(lo) + base - int_lo^v share(s) ds
/// with lo the bottom of the support. Throws std::invalid_argument when the
/// share decreases (by more than 1e-9) on a check grid over [lo, v].
double myerson_payment(const ShareFunction& share, const TypeDistribution& dist,
                       double base_payment, double v,
                       std::span<const double> breaks = {});

/// Schedule of envelope payments for `share`; monotonicity is checked once
/// over the whole support.
PaymentSchedule myerson_schedule(ShareFunction share, const TypeDistribution& dist,
                                 double base_payment, PaymentKind kind,
                                 std::vector<double> breaks = {});

/// Revenue-maximizing payment for the revenue-optimal rule: binding
/// participation at the lowest type against the outside option K.
double revenue_optimal_payment(const GameSpec& g, double v);

PaymentSchedule revenue_payments(const GameSpec& g);
// Envelope payments with zero base; they witness implementability only.
PaymentSchedule welfare_payments(const GameSpec& g);
PaymentSchedule zero_payments();
PaymentSchedule shifted(PaymentSchedule payments, double delta);

inline constexpr double kRevenueIdentityTolerance = 1e-6;

struct RevenueReport {
  // sum_i E[p(V_i)].
  double direct = 0.0;
  // sum_i E[phi(V_i) share_i(V_i)] - n * (lo * share_i(lo) - p(lo)), with
  // share_i integrated from the rule.
  double virtual_surplus = 0.0;
  bool consistent = false;
};

RevenueReport expected_revenue(const GameSpec& g, const MarginalRule& rule,
                               const PaymentSchedule& payments);

/// E[(V1 - alpha V2) h1(V) + (V2 - alpha V1) h2(V)].
double expected_welfare(const GameSpec& g, const MarginalRule& rule);

struct RationalityReport {
  bool individually_rational = false;
  bool lowest_type_ok = false;
  // lo * (share(lo) - K) - p(lo); zero when the lowest type binds.
  double lowest_type_slack = 0.0;
  // min over the grid of v * share(v) - p(v) - v * K.
  double worst_slack = 0.0;
  double worst_type = 0.0;
};

RationalityReport check_individual_rationality(const GameSpec& g,
                                               const ShareFunction& share,
                                               const PaymentSchedule& payments,
                                               std::size_t grid = 200);

}  // namespace infosale
