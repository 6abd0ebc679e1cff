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

// Experiment drivers behind the command-line tool. Every command writes its
// human summary to `log` and CSV either to `cfg.out` or, when that is empty,
// to `log` as well. Return values are process exit codes.

#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace infosale {

enum class Objective { welfare, revenue, both };
enum class Command { solve, curves, sweep_alpha, verify };
enum class Tamper { none, zero_payments };

Objective parse_objective(std::string_view text);
Tamper parse_tamper(std::string_view text);

struct AlphaList {
  // Column labels, kept exactly as written by the user.
  std::vector<std::string> labels;
  std::vector<double> values;
};

/// Parses "a,b,c" or a range "start:stop:step". Range members are rounded to
/// 1e-12 and labelled with their shortest round-trip text, so 0.1:0.3:0.1
/// yields 0.1, 0.2, 0.3.
AlphaList parse_alpha_list(std::string_view text);

struct ExperimentConfig {
  Command command = Command::solve;
  std::string dist = "exp:1";
  double prior = 0.5;
  AlphaList alpha;
  Objective objective = Objective::both;
  std::vector<std::size_t> grid_sizes;
  std::string out;
  Tamper tamper = Tamper::none;
};

inline constexpr std::size_t kMinGridSize = 11;

/// Throws std::invalid_argument unless the alpha list is non-empty and
/// non-negative and every grid size is at least 11.
void validate(const ExperimentConfig& cfg);

// Shortest round-trip decimal text.
std::string format_number(double x);

int cmd_solve(const ExperimentConfig& cfg, std::ostream& log);
int cmd_curves(const ExperimentConfig& cfg, std::ostream& log);
int cmd_sweep_alpha(const ExperimentConfig& cfg, std::ostream& log);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& log);

// Validates `cfg` and dispatches on its command.
int run(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace infosale
