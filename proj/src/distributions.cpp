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

#include "infosale/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "infosale/quadrature.hpp"

namespace infosale {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// Index k of the segment [knots[k], knots[k+1]) containing v; the last
// segment is closed on the right.
std::size_t segment_of(const Tabulated& t, double v) {
  auto it = std::upper_bound(t.knots.begin(), t.knots.end(), v);
  std::size_t k = static_cast<std::size_t>(it - t.knots.begin());
  k = k == 0 ? 0 : k - 1;
  return std::min(k, t.knots.size() - 2);
}

}  // namespace

TypeDistribution::TypeDistribution(Kind kind) : kind_(std::move(kind)) {
  truncated_hi_ = std::visit(
      Overloaded{
          [](const Exponential& e) { return -std::log(kTailMass) / e.rate; },
          [](const Uniform& u) { return u.hi; },
          [](const Tabulated& t) { return t.knots.back(); },
      },
      kind_);
  regular_ = check_regularity(*this, kRegularityGrid);
}

TypeDistribution TypeDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("exponential rate must be positive and finite");
  }
  return TypeDistribution(Exponential{rate});
}

TypeDistribution TypeDistribution::uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("uniform support needs finite lo < hi");
  }
  return TypeDistribution(Uniform{lo, hi});
}

TypeDistribution TypeDistribution::tabulated(std::vector<double> knots,
                                             std::vector<double> cdf_values) {
  if (knots.size() < 2 || knots.size() != cdf_values.size()) {
    throw std::invalid_argument("tabulated CDF needs >= 2 matching knots");
  }
  if (cdf_values.front() != 0.0 || cdf_values.back() != 1.0) {
    throw std::invalid_argument("tabulated CDF must run from 0 to 1");
  }
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    if (!std::isfinite(knots[k]) || !(knots[k] < knots[k + 1]) ||
        !(cdf_values[k] < cdf_values[k + 1])) {
      throw std::invalid_argument(
          "tabulated CDF knots and values must be strictly increasing");
    }
  }
  return TypeDistribution(Tabulated{std::move(knots), std::move(cdf_values)});
}

double TypeDistribution::support_lo() const {
  return std::visit(Overloaded{
                        [](const Exponential&) { return 0.0; },
                        [](const Uniform& u) { return u.lo; },
                        [](const Tabulated& t) { return t.knots.front(); },
                    },
                    kind_);
}

double TypeDistribution::support_hi() const {
  return std::visit(Overloaded{
                        [](const Exponential&) { return kInf; },
                        [](const Uniform& u) { return u.hi; },
                        [](const Tabulated& t) { return t.knots.back(); },
                    },
                    kind_);
}

double TypeDistribution::cdf(double v) const {
  if (std::isnan(v)) throw std::invalid_argument("cdf of NaN");
  return std::visit(
      Overloaded{
          [v](const Exponential& e) {
            if (v <= 0.0) return 0.0;
            return -std::expm1(-e.rate * v);
          },
          [v](const Uniform& u) {
            return std::clamp((v - u.lo) / (u.hi - u.lo), 0.0, 1.0);
          },
          [v](const Tabulated& t) {
            if (v <= t.knots.front()) return 0.0;
            if (v >= t.knots.back()) return 1.0;
            const std::size_t k = segment_of(t, v);
            const double w = (v - t.knots[k]) / (t.knots[k + 1] - t.knots[k]);
            return t.cdf[k] + w * (t.cdf[k + 1] - t.cdf[k]);
          },
      },
      kind_);
}

double TypeDistribution::pdf(double v) const {
  return std::visit(
      Overloaded{
          [v](const Exponential& e) {
            return v < 0.0 ? 0.0 : e.rate * std::exp(-e.rate * v);
          },
          [v](const Uniform& u) {
            return (v < u.lo || v > u.hi) ? 0.0 : 1.0 / (u.hi - u.lo);
          },
          [v](const Tabulated& t) {
            if (v < t.knots.front() || v > t.knots.back()) return 0.0;
            const std::size_t k = segment_of(t, v);
            return (t.cdf[k + 1] - t.cdf[k]) / (t.knots[k + 1] - t.knots[k]);
          },
      },
      kind_);
}

double TypeDistribution::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in [0, 1]");
  }
  return std::visit(
      Overloaded{
          [&](const Exponential& e) {
            if (q >= 1.0 - kTailMass) return truncated_hi_;
            return -std::log1p(-q) / e.rate;
          },
          [q](const Uniform& u) { return u.lo + q * (u.hi - u.lo); },
          [&](const Tabulated& t) {
            if (q <= 0.0) return t.knots.front();
            if (q >= 1.0) return t.knots.back();
            return bisect_boundary([&](double x) { return cdf(x) < q; },
                                   t.knots.front(), t.knots.back());
          },
      },
      kind_);
}

double TypeDistribution::virtual_value(double v) const {
  const double density = pdf(v);
  if (!(density > 0.0)) {
    throw std::domain_error("virtual value undefined where the density is 0");
  }
  return std::visit(Overloaded{
                        [v](const Exponential& e) { return v - 1.0 / e.rate; },
                        [v](const Uniform& u) { return 2.0 * v - u.hi; },
                        [&](const Tabulated&) {
                          return v - (1.0 - cdf(v)) / density;
                        },
                    },
                    kind_);
}

double TypeDistribution::inverse_virtual_value(double x) const {
  if (!regular_) {
    throw std::domain_error("inverse virtual value needs a regular distribution");
  }
  if (std::isnan(x)) throw std::invalid_argument("inverse virtual value of NaN");
  const double lo = support_lo();
  const double hi = truncated_hi_;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) {
            return std::clamp(x + 1.0 / e.rate, lo, hi);
          },
          [&](const Uniform& u) {
            return std::clamp(0.5 * (x + u.hi), lo, hi);
          },
          [&](const Tabulated&) {
            if (x <= virtual_value(lo)) return lo;
            if (x >= virtual_value(hi)) return hi;
            return bisect_boundary(
                [&](double v) { return virtual_value(v) <= x; }, lo, hi);
          },
      },
      kind_);
}

std::string TypeDistribution::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Exponential& e) { os << "exp:" << e.rate; },
                 [&](const Uniform& u) { os << "uniform:" << u.lo << ',' << u.hi; },
                 [&](const Tabulated& t) {
                   os << "tab:";
                   for (std::size_t k = 0; k < t.knots.size(); ++k) {
                     os << (k ? "," : "") << t.knots[k] << ',' << t.cdf[k];
                   }
                 },
             },
             kind_);
  return os.str();
}

bool check_regularity(const TypeDistribution& dist, std::size_t grid_points) {
  if (grid_points < 2) {
    throw std::invalid_argument("regularity grid needs at least 2 points");
  }
  const double lo = dist.support_lo();
  const double hi = dist.truncated_hi();
  const double step = (hi - lo) / static_cast<double>(grid_points + 1);
  double previous = dist.virtual_value(lo + step);
  for (std::size_t k = 2; k <= grid_points; ++k) {
    const double current = dist.virtual_value(lo + step * static_cast<double>(k));
    if (current - previous < -1e-12) return false;
    previous = current;
  }
  return true;
}

TypeDistribution parse_distribution(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution must look like exp:RATE or uniform:LO,HI");
  }
  const std::string_view name = spec.substr(0, colon);
  const std::vector<double> args = parse_list(spec.substr(colon + 1));
  if (name == "exp") {
    if (args.size() != 1) throw std::invalid_argument("exp takes one rate");
    return TypeDistribution::exponential(args[0]);
  }
  if (name == "uniform") {
    if (args.size() != 2) throw std::invalid_argument("uniform takes LO,HI");
    return TypeDistribution::uniform(args[0], args[1]);
  }
  if (name == "tab") {
    if (args.size() % 2 != 0) {
      throw std::invalid_argument("tab takes x0,F0,x1,F1,... pairs");
    }
    std::vector<double> knots;
    std::vector<double> values;
    for (std::size_t k = 0; k < args.size(); k += 2) {
      knots.push_back(args[k]);
      values.push_back(args[k + 1]);
    }
    return TypeDistribution::tabulated(std::move(knots), std::move(values));
  }
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

double expectation(const TypeDistribution& dist,
                   const std::function<double(double)>& fn,
                   std::span<const double> breaks) {
  const double lo = dist.support_lo();
  const double hi = dist.truncated_hi();
  const double mass = dist.cdf(hi) - dist.cdf(lo);
  std::vector<double> cuts(breaks.begin(), breaks.end());
  // Density jumps of tabulated distributions.
  if (const auto* t = std::get_if<Tabulated>(&dist.kind())) {
    cuts.insert(cuts.end(), t->knots.begin(), t->knots.end());
  }
  const double total = integrate(
      [&](double v) { return fn(v) * dist.pdf(v); }, lo, hi, cuts);
  return total / mass;
}

std::vector<double> quantile_grid(const TypeDistribution& dist,
                                  std::size_t count) {
  std::vector<double> nodes(count);
  for (std::size_t k = 0; k < count; ++k) {
    nodes[k] = dist.quantile((static_cast<double>(k) + 0.5) /
                             static_cast<double>(count));
  }
  return nodes;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linear grid needs >= 2 points");
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = lo + step * static_cast<double>(k);
  }
  out.back() = hi;
  return out;
}

}  // namespace infosale
