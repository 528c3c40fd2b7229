#pragma once

#include <cmath>
#include <string>

namespace renyilab {

/// Outcome of checking one inequality (or identity) lhs <= rhs.
struct BoundReport {
  enum class Relation {
    LessThan,  // holds iff margin > -tolerance
    Equal,     // holds iff |margin| <= tolerance
  };

  static constexpr double kDefaultTolerance = 1e-12;

  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool holds = false;
  std::string witness;
  Relation relation = Relation::LessThan;
  double tolerance = kDefaultTolerance;

  static BoundReport less_than(double lhs, double rhs, std::string witness,
                               double tolerance = kDefaultTolerance) {
    const double margin = rhs - lhs;
    const bool ok = margin > -tolerance || (std::isinf(rhs) && rhs > 0);
    return {lhs, rhs, margin, ok, std::move(witness), Relation::LessThan,
            tolerance};
  }

  static BoundReport equal(double lhs, double rhs, std::string witness,
                           double tolerance = kDefaultTolerance) {
    const double margin = rhs - lhs;
    return {lhs, rhs, margin, std::abs(margin) <= tolerance,
            std::move(witness), Relation::Equal, tolerance};
  }

  /// Strict inequality certified at the report's resolution. Floating point
  /// cannot certify margins below the tolerance.
  [[nodiscard]] bool strict() const noexcept {
    return relation == Relation::LessThan && margin > tolerance;
  }
};

}  // namespace renyilab
