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

#include "infosale/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <memory>
#include <stdexcept>

#include "infosale/distributions.hpp"
#include "infosale/game.hpp"
#include "infosale/mechanism.hpp"
#include "infosale/optimal.hpp"
#include "infosale/payments.hpp"
#include "infosale/verify.hpp"

namespace infosale {
namespace {

constexpr std::size_t kCurveGrid = 201;
constexpr double kCurveTopQuantile = 0.99;
constexpr std::size_t kDeviationGrid = 41;
constexpr std::size_t kCheckGrid = 1000;
// Oracle gaps are only held to the 1e-3 bound from this grid size up.
constexpr std::size_t kOracleGradedGrid = 101;
constexpr double kOracleTolerance = 1e-3;
constexpr double kDistortionTolerance = 1e-6;

double parse_double(std::string_view text) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

// Routes CSV to cfg.out when set, otherwise to the log stream.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

GameSpec make_game(const ExperimentConfig& cfg, double alpha) {
  return GameSpec(alpha, cfg.prior, parse_distribution(cfg.dist));
}

bool wants(Objective chosen, Objective kind) {
  return chosen == Objective::both || chosen == kind;
}

double revenue_of(const GameSpec& g) {
  return expected_revenue(g, revenue_rule(g), revenue_payments(g)).direct;
}

// Tallies PASS/FAIL lines for cmd_verify.
struct Checklist {
  std::ostream& log;
  int failed = 0;
  int passed = 0;

  void record(bool ok, const std::string& name, const std::string& detail) {
    log << (ok ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
    ok ? ++passed : ++failed;
  }
};

std::string describe(const DeviationReport& r) {
  return "player=" + std::to_string(static_cast<int>(r.player)) +
         " true_type=" + format_number(r.true_type) +
         " reported_type=" + format_number(r.reported_type) +
         " deviation=" + to_string(r.deviation) +
         " regret=" + format_number(r.max_regret);
}

void verify_kind(const ExperimentConfig& cfg, const GameSpec& g,
                 const std::string& alpha_label, RuleKind kind, Checklist& checks) {
  const std::string tag = std::string(to_string(kind)) + " alpha=" + alpha_label;
  const TypeDistribution& dist = g.dist();
  const MarginalRule rule = kind == RuleKind::welfare ? welfare_rule(g) : revenue_rule(g);

  const ObedienceReport obedience = is_obedient(rule, g, kCheckGrid);
  checks.record(obedience.obedient, "obedience", tag + " worst_margin=" +
                                                     format_number(obedience.worst_margin));

  bool monotone = true;
  double previous = -INFINITY;
  for (double v : linear_grid(dist.support_lo(), dist.quantile(kCurveTopQuantile),
                              kCheckGrid)) {
    const double s = closed_form_interim_share(kind, g, v);
    monotone = monotone && s >= previous - 1e-12;
    previous = s;
  }
  checks.record(monotone, "monotone_share", tag);

  PaymentSchedule payments =
      kind == RuleKind::welfare ? welfare_payments(g) : revenue_payments(g);
  if (cfg.tamper == Tamper::zero_payments) payments = zero_payments();
  const std::vector<double> nodes = quantile_grid(dist, kDeviationGrid);
  const DeviationReport worst = search_double_deviations(
      deviation_table(kind, g, nodes), sample_payments(payments, nodes));
  checks.record(worst.max_regret <= kRegretTolerance, "truthful_obedient",
                tag + " " + describe(worst));

  if (kind == RuleKind::revenue) {
    const RevenueReport revenue = expected_revenue(g, rule, payments);
    checks.record(revenue.consistent, "revenue_identity",
                  tag + " direct=" + format_number(revenue.direct) +
                      " virtual_surplus=" + format_number(revenue.virtual_surplus));
    const RationalityReport ir = check_individual_rationality(
        g, [&g](double v) { return closed_form_interim_share(RuleKind::revenue, g, v); },
        payments);
    checks.record(ir.individually_rational, "participation",
                  tag + " worst_slack=" + format_number(ir.worst_slack) +
                      " at type=" + format_number(ir.worst_type));
  } else {
    const double mass = distorted_type_mass(rule, first_best_welfare_rule(g), g);
    const double expected = 2.0 * dist.cdf(g.alpha() * obedience_threshold(g));
    checks.record(std::abs(mass - expected) <= kDistortionTolerance, "distorted_mass",
                  tag + " mass=" + format_number(mass) +
                      " expected=" + format_number(expected));
  }

  for (std::size_t m : cfg.grid_sizes) {
    const OracleGap gap = oracle_gap(kind, g, m);
    const std::string detail = tag + " grid=" + std::to_string(m) +
                               " grid_optimum=" + format_number(gap.grid_optimum) +
                               " closed_form=" + format_number(gap.closed_form) +
                               " relative_gap=" + format_number(gap.relative_gap);
    if (m >= kOracleGradedGrid) {
      checks.record(gap.relative_gap <= kOracleTolerance, "oracle_gap", detail);
    } else {
      checks.log << "INFO oracle_gap " << detail << '\n';
    }
  }
}

}  // namespace

Objective parse_objective(std::string_view text) {
  if (text == "welfare") return Objective::welfare;
  if (text == "revenue") return Objective::revenue;
  if (text == "both") return Objective::both;
  throw std::invalid_argument("objective must be welfare, revenue or both");
}

Tamper parse_tamper(std::string_view text) {
  if (text.empty() || text == "none") return Tamper::none;
  if (text == "zero-payments") return Tamper::zero_payments;
  throw std::invalid_argument("unknown tamper mode '" + std::string(text) + "'");
}

std::string format_number(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

AlphaList parse_alpha_list(std::string_view text) {
  AlphaList out;
  const std::vector<std::string_view> range = split(text, ':');
  if (range.size() == 3) {
    const double start = parse_double(range[0]);
    const double stop = parse_double(range[1]);
    const double step = parse_double(range[2]);
    if (!(step > 0.0) || !(stop >= start)) {
      throw std::invalid_argument("alpha range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
      const double value =
          std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12;
      out.values.push_back(value);
      out.labels.push_back(format_number(value));
    }
    return out;
  }
  if (range.size() != 1) throw std::invalid_argument("alpha range is start:stop:step");
  for (std::string_view item : split(text, ',')) {
    out.values.push_back(parse_double(item));
    out.labels.emplace_back(item);
  }
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.alpha.values.empty()) throw std::invalid_argument("alpha list is empty");
  for (double a : cfg.alpha.values) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("alpha values must be finite and >= 0");
    }
  }
  for (std::size_t m : cfg.grid_sizes) {
    if (m < kMinGridSize) throw std::invalid_argument("grid sizes must be >= 11");
  }
}

int cmd_solve(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.alpha.values.size() != 1) {
    log << "error: solve takes a single alpha\n";
    return 1;
  }
  const GameSpec g = make_game(cfg, cfg.alpha.values.front());
  const TypeDistribution& dist = g.dist();
  const bool revenue = wants(cfg.objective, Objective::revenue);
  if (revenue && !dist.is_regular()) {
    log << "error: " << dist.describe()
        << " is not regular; the revenue objective needs a non-decreasing virtual value\n";
    return 1;
  }

  const double alpha = g.alpha();
  const double v_star = obedience_threshold(g);
  log << "distribution " << dist.describe() << '\n'
      << "prior " << format_number(g.prior_theta1()) << "  p_max "
      << format_number(g.p_max()) << "  alpha " << cfg.alpha.labels.front() << '\n'
      << "v* = " << format_number(v_star) << '\n'
      << "outside option K = " << format_number(outside_option_share(g)) << '\n';
  if (dist.is_regular()) {
    const double v0 = dist.inverse_virtual_value(0.0);
    log << "v0 = " << format_number(v0) << '\n'
        << "v~ = " << format_number(exclusion_point(RuleKind::revenue, g, v_star)) << '\n'
        << "regime: " << (v_star >= v0 ? "v* >= v0" : "v* < v0") << '\n';
  }

  if (alpha == 0.0) {
    log << "cutoffs saturated: with no externality every type";
    log << (revenue ? " with non-negative virtual value" : "")
        << " is recommended the state\n";
  } else {
    log << "welfare cutoff for own type v: max(v*, v / alpha)\n";
    if (revenue) log << "revenue cutoff for own type v: max(v*, phi^-1(phi(v) / alpha))\n";
  }

  if (wants(cfg.objective, Objective::welfare)) {
    log << "first-best welfare = " << format_number(expected_welfare(g, first_best_welfare_rule(g)))
        << '\n'
        << "second-best welfare = " << format_number(expected_welfare(g, welfare_rule(g)))
        << '\n';
  }
  if (revenue) {
    const MarginalRule rule = revenue_rule(g);
    log << "revenue = " << format_number(revenue_of(g)) << '\n'
        << "welfare under revenue rule = " << format_number(expected_welfare(g, rule))
        << '\n';
  }
  return 0;
}

int cmd_curves(const ExperimentConfig& cfg, std::ostream& log) {
  const RuleKind kind =
      cfg.objective == Objective::welfare ? RuleKind::welfare : RuleKind::revenue;
  const TypeDistribution dist = parse_distribution(cfg.dist);
  if (kind == RuleKind::revenue && !dist.is_regular()) {
    log << "error: " << dist.describe()
        << " is not regular; the revenue objective needs a non-decreasing virtual value\n";
    return 1;
  }
  const std::size_t m = cfg.grid_sizes.empty() ? kCurveGrid : cfg.grid_sizes.front();
  const std::vector<double> types =
      linear_grid(dist.support_lo(), dist.quantile(kCurveTopQuantile), m);

  const std::size_t n = cfg.alpha.values.size();
  std::vector<std::vector<double>> share(n), pay(n);
  for (std::size_t a = 0; a < n; ++a) {
    const GameSpec g(cfg.alpha.values[a], cfg.prior, dist);
    const PaymentSchedule payments =
        kind == RuleKind::welfare ? welfare_payments(g) : revenue_payments(g);
    for (double v : types) {
      share[a].push_back(closed_form_interim_share(kind, g, v));
      pay[a].push_back(payments(v));
    }
  }

  CsvSink sink(cfg.out, log);
  std::ostream& csv = *sink;
  csv << "value";
  for (const auto& label : cfg.alpha.labels) csv << ",share" << label;
  for (const auto& label : cfg.alpha.labels) csv << ",pay" << label;
  csv << '\n';
  for (std::size_t k = 0; k < types.size(); ++k) {
    csv << format_number(types[k]);
    for (std::size_t a = 0; a < n; ++a) csv << ',' << format_number(share[a][k]);
    for (std::size_t a = 0; a < n; ++a) csv << ',' << format_number(pay[a][k]);
    csv << '\n';
  }
  return 0;
}

int cmd_sweep_alpha(const ExperimentConfig& cfg, std::ostream& log) {
  const TypeDistribution dist = parse_distribution(cfg.dist);
  if (!dist.is_regular()) {
    log << "error: " << dist.describe()
        << " is not regular; the revenue column needs a non-decreasing virtual value\n";
    return 1;
  }
  struct Row {
    double first_best, second_best, revenue;
  };
  std::vector<std::future<Row>> jobs;
  for (double alpha : cfg.alpha.values) {
    jobs.push_back(std::async(std::launch::async, [&cfg, alpha] {
      const GameSpec g = make_game(cfg, alpha);
      return Row{expected_welfare(g, first_best_welfare_rule(g)),
                 expected_welfare(g, welfare_rule(g)), revenue_of(g)};
    }));
  }

  CsvSink sink(cfg.out, log);
  std::ostream& csv = *sink;
  csv << "alpha,firstbest,secondbest,revenue\n";
  for (std::size_t a = 0; a < jobs.size(); ++a) {
    const Row row = jobs[a].get();
    csv << cfg.alpha.labels[a] << ',' << format_number(row.first_best) << ','
        << format_number(row.second_best) << ',' << format_number(row.revenue) << '\n';
  }
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
  Checklist checks{log};
  for (std::size_t a = 0; a < cfg.alpha.values.size(); ++a) {
    const GameSpec g = make_game(cfg, cfg.alpha.values[a]);
    for (RuleKind kind : {RuleKind::welfare, RuleKind::revenue}) {
      const Objective matching =
          kind == RuleKind::welfare ? Objective::welfare : Objective::revenue;
      if (!wants(cfg.objective, matching)) continue;
      if (kind == RuleKind::revenue && !g.dist().is_regular()) {
        checks.record(false, "regularity", g.dist().describe());
        continue;
      }
      verify_kind(cfg, g, cfg.alpha.labels[a], kind, checks);
    }
  }
  log << "summary passed=" << checks.passed << " failed=" << checks.failed << '\n';
  return checks.failed == 0 ? 0 : 1;
}

int run(const ExperimentConfig& cfg, std::ostream& log) {
  validate(cfg);
  switch (cfg.command) {
    case Command::solve: return cmd_solve(cfg, log);
    case Command::curves: return cmd_curves(cfg, log);
    case Command::sweep_alpha: return cmd_sweep_alpha(cfg, log);
    case Command::verify: return cmd_verify(cfg, log);
  }
  return 1;
}

}  // namespace infosale
