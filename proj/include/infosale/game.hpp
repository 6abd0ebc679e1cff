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

#include "infosale/distributions.hpp"

namespace infosale {

enum class Player { one = 1, two = 2 };

constexpr Player opponent(Player p) {
  return p == Player::one ? Player::two : Player::one;
}

// Actions and states are bits.
struct ActionProfile {
  int a1 = 0;
  int a2 = 0;
};

struct State {
  int theta = 0;
};

/// The binary product-choice game: two buyers, two states, two actions,
/// payoff share 1{a_i = theta} - alpha * 1{a_j = theta}. Types of both buyers
/// are i.i.d. draws from `dist`, independent of the state.
class GameSpec {
 public:
  GameSpec(double alpha, double prior_theta1, TypeDistribution dist);

  double alpha() const { return alpha_; }
  double prior_theta1() const { return prior_theta1_; }
  double prior(State s) const {
    return s.theta == 1 ? prior_theta1_ : 1.0 - prior_theta1_;
  }
  // Probability of the ex-ante most likely state.
  double p_max() const;
  const TypeDistribution& dist() const { return dist_; }

  GameSpec with_alpha(double alpha) const { return {alpha, prior_theta1_, dist_}; }

 private:
  double alpha_;
  double prior_theta1_;
  TypeDistribution dist_;
};

double market_share(const GameSpec& g, Player player, ActionProfile a, State s);

// Linear payoff v * market_share.
double utility(const GameSpec& g, Player player, double v, ActionProfile a,
               State s);

// v* = F^{-1}(p_max): opponents below it must be recommended the state.
double obedience_threshold(const GameSpec& g);

// K = p_max - alpha, the share a non-participant secures when the opponent
// learns the state.
double outside_option_share(const GameSpec& g);

}  // namespace infosale
