#include "ramchord/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ramchord/graph.hpp"

namespace ramchord {

using nlohmann::json;

namespace {

// Slack for comparisons that are equalities in exact arithmetic and differ only by rounding.
constexpr double kLogTolerance = 1e-9;

}  // namespace

LogReal LogReal::of(double x) {
  if (!(x > 0.0)) throw InvalidInput("LogReal needs a positive value");
  return {std::log10(x)};
}

double LogReal::value() const { return std::pow(10.0, log10); }

std::string LogReal::scientific(int digits) const {
  double exponent = std::floor(log10);
  double mantissa = std::pow(10.0, log10 - exponent);
  // Rounding the mantissa can carry into the exponent.
  const double scale = std::pow(10.0, digits - 1);
  mantissa = std::round(mantissa * scale) / scale;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  const long long e = static_cast<long long>(exponent);
  std::snprintf(buf, sizeof buf, "%.*fe%c%02lld", digits - 1, mantissa, e < 0 ? '-' : '+', e < 0 ? -e : e);
  return buf;
}

LogReal ParameterSet::z(double n, double chords) const {
  if (n <= 0 || chords <= 0) throw InvalidInput("z needs n > 0 and |D| > 0");
  return {2 * eps.log10 + std::log10(n) - std::log10(M_reg) - std::log10(chords)};
}

LogReal ParameterSet::chord_budget(double n) const {
  if (n <= 0) throw InvalidInput("chord budget needs n > 0");
  return {c.log10 + std::log10(n)};
}

bool ParameterSet::all_checks_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConstantCheck& c) { return !c.required || c.holds; });
}

const ConstantCheck& ParameterSet::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvalidInput("no check named '" + name + "'");
}

ParameterSet paper_constants(int delta, int k, double c2, double M_reg, double n_even, double n_benevides,
                             double n_reg) {
  if (delta <= 2) throw InvalidInput("Delta must exceed 2");
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (!(c2 >= 1.0)) throw InvalidInput("c2 must be at least 1");
  if (!(M_reg >= 1.0)) throw InvalidInput("M_reg must be at least 1");
  if (!(n_even > 0.0) || !(n_benevides > 0.0) || !(n_reg > 0.0)) throw InvalidInput("thresholds must be positive");

  ParameterSet p;
  p.delta = delta;
  p.k = k;
  p.c2 = c2;
  p.M_reg = M_reg;
  p.n_reg = n_reg;
  p.n_even = n_even;
  p.n_benevides = n_benevides;

  const double D = delta;
  const double ln_delta = std::log(D);
  const double exponent = 4000.0 * c2 * D * ln_delta * ln_delta;
  p.eps = {-(std::log10(200.0) + std::log10(static_cast<double>(k)) + exponent * std::log10(D))};
  p.beta = {p.eps.log10 / 5};
  p.xi = {p.eps.log10 / 100};
  p.gamma = p.beta;
  const double first = p.eps.log10 / 100;
  const double second = (std::log10(8.0 * D) + p.eps.log10) / D;
  p.d = {std::log10(4.0) + std::max(first, second)};
  p.m_reg = {std::log10(n_even) - 6 * p.eps.log10};
  p.c = {2 * p.eps.log10 - std::log10(16.0) - 2 * std::log10(M_reg)};
  const double one_minus_eps = std::log1p(-p.eps.value()) / std::log(10.0);
  p.n0 = {std::log10(M_reg) + std::log10(n_benevides) - std::log10(4.0) - p.eps.log10 / 2 - one_minus_eps};

  const double delta_pow = -40 * std::log10(D);
  p.checks.push_back({kCheckDensity, p.d.log10 < delta_pow, true, p.d.log10, delta_pow});
  p.checks.push_back({kCheckDensityHalf, p.d.log10 < std::log10(0.5), true, p.d.log10, std::log10(0.5)});
  // z is decreasing in |D|, so |D| = c n gives its minimum eps^2 / (c M_reg) for every n.
  const double z_min = 2 * p.eps.log10 - p.c.log10 - std::log10(M_reg);
  const double target = std::log10(16.0 * M_reg);
  p.checks.push_back({kCheckSegment, z_min >= target - kLogTolerance, true, z_min, target});
  p.checks.push_back({kCheckRegularityRange, std::log10(M_reg) >= p.m_reg.log10, false, std::log10(M_reg),
                      p.m_reg.log10});
  return p;
}

json log_real_to_json(const LogReal& x) {
  json out = {{"log10", x.log10}, {"scientific", x.scientific()}};
  const double v = x.value();
  if (std::isfinite(v) && v > 0.0 && std::fpclassify(v) == FP_NORMAL) out["value"] = v;
  else out["value"] = nullptr;
  return out;
}

json parameters_to_json(const ParameterSet& p) {
  json checks = json::array();
  for (const auto& c : p.checks) {
    checks.push_back({{"name", c.name},
                      {"holds", c.holds},
                      {"required", c.required},
                      {"lhs_log10", c.lhs_log10},
                      {"rhs_log10", c.rhs_log10}});
  }
  return {{"inputs",
           {{"delta", p.delta},
            {"k", p.k},
            {"c2", p.c2},
            {"M_reg", p.M_reg},
            {"n_reg", p.n_reg},
            {"n_even", p.n_even},
            {"n_benevides", p.n_benevides}}},
          {"eps", log_real_to_json(p.eps)},
          {"beta", log_real_to_json(p.beta)},
          {"xi", log_real_to_json(p.xi)},
          {"gamma", log_real_to_json(p.gamma)},
          {"d", log_real_to_json(p.d)},
          {"m_reg", log_real_to_json(p.m_reg)},
          {"c", log_real_to_json(p.c)},
          {"n0", log_real_to_json(p.n0)},
          {"checks", checks},
          {"all_checks_hold", p.all_checks_hold()}};
}

}  // namespace ramchord
