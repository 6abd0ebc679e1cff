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

#include "infosale/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infosale {
namespace {

bool is_bit(int x) { return x == 0 || x == 1; }

}  // namespace

GameSpec::GameSpec(double alpha, double prior_theta1, TypeDistribution dist)
    : alpha_(alpha), prior_theta1_(prior_theta1), dist_(std::move(dist)) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite and >= 0");
  }
  if (!(prior_theta1 > 0.0 && prior_theta1 < 1.0)) {
    throw std::invalid_argument("prior P[theta=1] must lie in (0, 1)");
  }
}

double GameSpec::p_max() const {
  return std::max(prior_theta1_, 1.0 - prior_theta1_);
}

double market_share(const GameSpec& g, Player player, ActionProfile a, State s) {
  if (!is_bit(a.a1) || !is_bit(a.a2) || !is_bit(s.theta)) {
    throw std::invalid_argument("actions and states are bits");
  }
  const int own = player == Player::one ? a.a1 : a.a2;
  const int other = player == Player::one ? a.a2 : a.a1;
  return (own == s.theta ? 1.0 : 0.0) - g.alpha() * (other == s.theta ? 1.0 : 0.0);
}

double utility(const GameSpec& g, Player player, double v, ActionProfile a,
               State s) {
  return v * market_share(g, player, a, s);
}

double obedience_threshold(const GameSpec& g) {
  return g.dist().quantile(g.p_max());
}

double outside_option_share(const GameSpec& g) { return g.p_max() - g.alpha(); }

}  // namespace infosale
