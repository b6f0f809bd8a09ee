#pragma once

#include <initializer_list>
#include <optional>
#include <string>

namespace isoclus {

/// Direction of a checked inequality lhs ? rhs.
enum class Sense { ge, gt, le };

/// One named inequality instance. Slack is oriented so that slack >= 0 means
/// the inequality holds.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Sense sense = Sense::ge;
  double slack = 0.0;
  bool satisfied = false;
  std::optional<double> fitted_constant;
  std::optional<double> normalized_residual;
  std::string digest;
};

/// Builds a report, computing slack and the satisfied flag with tolerance
/// 1e-9 * max(|lhs|, |rhs|, 1). Strict checks need slack above that tolerance.
BoundReport make_report(std::string name, double lhs, double rhs, Sense sense,
                        std::initializer_list<double> inputs = {});

/// FNV-1a digest of the bit patterns of the inputs, as 16 hex digits.
std::string digest_of(std::initializer_list<double> values);

double report_tolerance(double lhs, double rhs);

}  // namespace isoclus
