#pragma once

// Rényi entropies (nats) of finite pmfs and two-sided geometric laws, the
// order constant c(alpha) = alpha^(1/(alpha-1)), and closed-form values for
// the exponential and Laplace densities.

#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>
#include <vector>

#include "renyilab/core.hpp"

namespace renyilab {

enum class EntropyMethod { DirectSum, ClosedForm, LimitFormula };

inline std::string_view to_string(EntropyMethod m) noexcept {
  switch (m) {
    case EntropyMethod::DirectSum: return "direct-sum";
    case EntropyMethod::ClosedForm: return "closed-form";
    case EntropyMethod::LimitFormula: return "limit-formula";
  }
  return "?";
}

struct EntropyValue {
  Order order;
  double value;  // nats
  EntropyMethod method;
};

/// Finite orders this close to 1 are evaluated with the Shannon formula.
inline constexpr double kShannonWindow = 1e-6;

namespace detail {

inline double shannon_sum(std::span<const double> p) noexcept {
  numeric::CompensatedSum acc;
  for (double x : p) acc.add(-x * std::log(x));
  return acc.value();
}

/// log sum p_i^alpha, switching to log space when small weights would
/// underflow under the power.
inline double log_power_sum(std::span<const double> p, double alpha) {
  const double smallest = *std::min_element(p.begin(), p.end());
  if (smallest < std::pow(1e-300, 1.0 / alpha)) {
    std::vector<double> terms(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      terms[i] = alpha * std::log(p[i]);
    }
    return numeric::log_sum_exp(terms);
  }
  numeric::CompensatedSum acc;
  for (double x : p) acc.add(std::pow(x, alpha));
  return std::log(acc.value());
}

/// 1 - r^alpha for r in [0, 1).
inline double one_minus_power(double r, double alpha) noexcept {
  if (r == 0.0) return 1.0;
  return -std::expm1(alpha * std::log(r));
}

/// r log r / (1 - r)^2 with the r = 0 limit.
inline double xlogx_over_sq(double r) noexcept {
  if (r == 0.0) return 0.0;
  const double d = 1.0 - r;
  return r * std::log(r) / (d * d);
}

}  // namespace detail

inline EntropyValue renyi(const Pmf& f, Order a) {
  const auto p = f.probs();
  switch (a.kind()) {
    case Order::Kind::Zero:
      return {a, std::log(static_cast<double>(p.size())),
              EntropyMethod::DirectSum};
    case Order::Kind::One:
      return {a, detail::shannon_sum(p), EntropyMethod::DirectSum};
    case Order::Kind::Infinity:
      return {a, -std::log(f.max()), EntropyMethod::DirectSum};
    case Order::Kind::Two:
    case Order::Kind::Finite:
      break;
  }
  const double alpha = a.alpha();
  if (std::abs(alpha - 1.0) <= kShannonWindow) {
    return {a, detail::shannon_sum(p), EntropyMethod::LimitFormula};
  }
  return {a, detail::log_power_sum(p, alpha) / (1.0 - alpha),
          EntropyMethod::DirectSum};
}

/// Closed form for a two-sided geometric law. With S(a) = 1/(1-p^a) +
/// 1/(1-q^a) - 1 and peak M, sum phi^a = M^a S(a).
inline EntropyValue renyi_two_sided_geo(const TwoSidedGeo& g, Order a) {
  const double p = g.p();
  const double q = g.q();
  const double log_peak = std::log(g.peak());
  switch (a.kind()) {
    case Order::Kind::Zero:
      return {a, g.is_point_mass() ? 0.0 : kInf, EntropyMethod::ClosedForm};
    case Order::Kind::Infinity:
      return {a, -log_peak, EntropyMethod::ClosedForm};
    case Order::Kind::One:
      return {a,
              -g.total_mass() * log_peak -
                  g.peak() * (detail::xlogx_over_sq(p) +
                              detail::xlogx_over_sq(q)),
              EntropyMethod::ClosedForm};
    case Order::Kind::Two:
    case Order::Kind::Finite:
      break;
  }
  const double alpha = a.alpha();
  if (std::abs(alpha - 1.0) <= kShannonWindow) {
    auto v = renyi_two_sided_geo(g, Order::one());
    return {a, v.value, EntropyMethod::LimitFormula};
  }
  const double s = 1.0 / detail::one_minus_power(p, alpha) +
                   1.0 / detail::one_minus_power(q, alpha) - 1.0;
  return {a, (alpha * log_peak + std::log(s)) / (1.0 - alpha),
          EntropyMethod::ClosedForm};
}

/// log c(alpha) = log(alpha) / (alpha - 1), with log c(1) = 1,
/// log c(inf) = 0 and log c(0) = +inf.
inline double log_order_constant(Order a) noexcept {
  switch (a.kind()) {
    case Order::Kind::Zero: return kInf;
    case Order::Kind::One: return 1.0;
    case Order::Kind::Infinity: return 0.0;
    case Order::Kind::Two: return std::numbers::ln2;
    case Order::Kind::Finite: break;
  }
  const double alpha = a.alpha();
  return std::log1p(alpha - 1.0) / (alpha - 1.0);
}

/// c(alpha) = alpha^(1/(alpha-1)); c(1) = e, c(inf) = 1, c(0) = +inf.
inline double order_constant(Order a) noexcept {
  switch (a.kind()) {
    case Order::Kind::Zero: return kInf;
    case Order::Kind::One: return std::numbers::e;
    case Order::Kind::Two: return 2.0;
    case Order::Kind::Infinity: return 1.0;
    case Order::Kind::Finite: break;
  }
  return std::exp(log_order_constant(a));
}

enum class ContinuousLaw { Exponential, Laplace };

/// h_alpha of the unit exponential density e^{-x} on (0, inf) or the
/// Laplace density e^{-|x|}/2. Order zero is infinite and rejected.
inline double continuous_reference(ContinuousLaw law, Order a) {
  if (a.is_zero()) {
    throw InputError("order 0 entropy is infinite for unbounded supports");
  }
  const double base = log_order_constant(a);
  return law == ContinuousLaw::Laplace ? std::numbers::ln2 + base : base;
}

}  // namespace renyilab
