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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infosale/experiment.hpp"

namespace {

struct Flags {
  std::string dist = "exp:1";
  double prior = 0.5;
  std::string alpha;
  std::string objective;
  std::vector<std::size_t> grid;
  std::string out;
  std::string tamper;
};

struct Defaults {
  const char* alpha;
  const char* objective;
  std::vector<std::size_t> grid;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help,
                      Flags& flags) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--dist", flags.dist, "exp:RATE | uniform:LO,HI | tab:x0,F0,x1,F1,...")
      ->capture_default_str();
  sub->add_option("--prior", flags.prior, "P[theta = 1]")->capture_default_str();
  sub->add_option("--alpha", flags.alpha, "comma list or start:stop:step");
  sub->add_option("--objective", flags.objective, "welfare | revenue | both");
  sub->add_option("--grid", flags.grid, "grid sizes per axis")->delimiter(',');
  sub->add_option("--out", flags.out, "CSV output path (default: stdout)");
  sub->add_option("--tamper", flags.tamper, "fault injection: zero-payments");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal mechanisms for selling information to competing buyers"};
  app.require_subcommand(1);
  Flags flags;

  struct Entry {
    CLI::App* sub;
    infosale::Command command;
    Defaults defaults;
  };
  const std::vector<Entry> entries{
      {add_command(app, "solve", "thresholds and aggregates for one alpha", flags),
       infosale::Command::solve, {"0.5", "both", {}}},
      {add_command(app, "curves", "CSV of interim share and payment by type", flags),
       infosale::Command::curves, {"0.5,1,1.5", "revenue", {201}}},
      {add_command(app, "sweep-alpha", "CSV of welfare and revenue by alpha", flags),
       infosale::Command::sweep_alpha, {"0.1:1.5:0.1", "both", {}}},
      {add_command(app, "verify", "run the oracle checks", flags),
       infosale::Command::verify, {"0.5,1,1.5", "both", {21, 51, 101}}},
  };

  CLI11_PARSE(app, argc, argv);

  try {
    infosale::ExperimentConfig cfg;
    for (const Entry& e : entries) {
      if (!e.sub->parsed()) continue;
      cfg.command = e.command;
      if (flags.alpha.empty()) flags.alpha = e.defaults.alpha;
      if (flags.objective.empty()) flags.objective = e.defaults.objective;
      if (flags.grid.empty()) flags.grid = e.defaults.grid;
    }
    cfg.dist = flags.dist;
    cfg.prior = flags.prior;
    cfg.alpha = infosale::parse_alpha_list(flags.alpha);
    cfg.objective = infosale::parse_objective(flags.objective);
    cfg.grid_sizes = flags.grid;
    cfg.out = flags.out;
    cfg.tamper = infosale::parse_tamper(flags.tamper);
    return infosale::run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
