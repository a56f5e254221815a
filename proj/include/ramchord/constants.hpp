#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ramchord {

/// Positive real held by its base-10 logarithm.
struct LogReal {
  double log10 = 0.0;

  static LogReal of(double x);
  /// 10^log10, which underflows to 0 or overflows to inf outside double range.
  double value() const;
  /// Mantissa/exponent text such as "1.2346e-6912", valid at any magnitude.
  std::string scientific(int digits = 5) const;
};

struct ConstantCheck {
  std::string name;
  bool holds = false;
  bool required = true;  // false for hypotheses about the external inputs
  double lhs_log10 = 0.0;
  double rhs_log10 = 0.0;
};

/// Constants of the embedding argument as functions of Delta, k and the
/// externally supplied c2, M_reg, n_reg, n_even and n_benevides.
struct ParameterSet {
  int delta = 0;
  int k = 0;
  double c2 = 0.0;
  double M_reg = 0.0;
  double n_reg = 0.0;
  double n_even = 0.0;
  double n_benevides = 0.0;

  LogReal eps;    // 1 / (200 k Delta^(4000 c2 Delta (ln Delta)^2))
  LogReal beta;   // eps^(1/5)
  LogReal xi;     // eps^(1/100)
  LogReal gamma;  // beta
  LogReal d;      // 4 max{eps^(1/100), (8 Delta eps)^(1/Delta)}
  LogReal m_reg;  // n_even / eps^6
  LogReal c;      // eps^2 / (16 M_reg^2)
  LogReal n0;     // M_reg n_benevides / (4 eps^(1/2) (1 - eps))

  std::vector<ConstantCheck> checks;

  /// eps^2 n / (M_reg |D|).
  LogReal z(double n, double chords) const;
  /// Largest chord count c n allowed for cycle length n.
  LogReal chord_budget(double n) const;
  /// Every required check holds.
  bool all_checks_hold() const;
  const ConstantCheck& check(const std::string& name) const;
};

/// Throws InvalidInput unless delta > 2, k >= 1, c2 >= 1 and M_reg >= 1.
ParameterSet paper_constants(int delta, int k, double c2, double M_reg, double n_even = 1.0,
                             double n_benevides = 1.0, double n_reg = 1.0);

inline constexpr const char* kCheckDensity = "d < Delta^-40";
inline constexpr const char* kCheckDensityHalf = "d < 1/2";
inline constexpr const char* kCheckSegment = "z >= 16 M_reg when |D| <= c n";
inline constexpr const char* kCheckRegularityRange = "M_reg >= m_reg";

nlohmann::json log_real_to_json(const LogReal& x);
nlohmann::json parameters_to_json(const ParameterSet& p);

}  // namespace ramchord
