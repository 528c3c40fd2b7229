#pragma once

// Verifiers for the min-entropy comparison H_a(X) - H_inf(X) < log c(a)
// over log-concave X, the two-sided geometric lemma behind it, the scalar
// inequality that drives the lemma, and the geometric sharpness limit.

#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "renyilab/core.hpp"
#include "renyilab/entropy.hpp"
#include "renyilab/report.hpp"

namespace renyilab {

namespace detail {

inline std::string fmt17(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

/// H_a(f) - H_inf(f) < log c(a) for log-concave f.
inline BoundReport check_main_theorem(const Pmf& f, Order a) {
  if (a.is_zero()) throw InputError("check_main_theorem: order must be > 0");
  if (!is_log_concave(f)) {
    throw InputError("check_main_theorem: pmf is not log-concave");
  }
  const double gap = renyi(f, a).value - renyi(f, Order::infinity()).value;
  return BoundReport::less_than(
      gap, log_order_constant(a),
      "H_" + a.to_string() + " - H_inf, support " + std::to_string(f.size()));
}

/// H_a(phi) - H_inf(phi) for a normalized two-sided geometric law, written
/// through S(a) = 1/(1-p^a) + 1/(1-q^a) - 1 so the peak cancels:
/// log(S(a)/S(1))/(1-a), and -(p log p/(1-p)^2 + q log q/(1-q)^2)/S(1) at a=1.
inline double tsg_min_entropy_gap(double p, double q, Order a) {
  const double s1 = 1.0 / (1.0 - p) + 1.0 / (1.0 - q) - 1.0;
  switch (a.kind()) {
    case Order::Kind::Zero:
      return (p == 0.0 && q == 0.0) ? 0.0 : kInf;
    case Order::Kind::Infinity:
      return 0.0;
    case Order::Kind::One:
      return -(detail::xlogx_over_sq(p) + detail::xlogx_over_sq(q)) / s1;
    case Order::Kind::Two:
    case Order::Kind::Finite:
      break;
  }
  const double alpha = a.alpha();
  if (std::abs(alpha - 1.0) <= kShannonWindow) {
    return tsg_min_entropy_gap(p, q, Order::one());
  }
  const double sa = 1.0 / detail::one_minus_power(p, alpha) +
                    1.0 / detail::one_minus_power(q, alpha) - 1.0;
  return std::log(sa / s1) / (1.0 - alpha);
}

inline BoundReport check_tsg_lemma(const TwoSidedGeo& g, Order a) {
  if (a.is_zero()) throw InputError("check_tsg_lemma: order must be > 0");
  return BoundReport::less_than(
      tsg_min_entropy_gap(g.p(), g.q(), a), log_order_constant(a),
      "tsg(p=" + detail::fmt17(g.p()) + ", q=" + detail::fmt17(g.q()) +
          "), order " + a.to_string());
}

/// f(x) - 1/2 where f(x) = x log x/(1-x)^2 + 1/(1-x) on (0, 1).
/// Near x = 1 the two terms cancel to leading order; there the series
/// f(1-e) = sum_{k>=2} e^(k-2)/(k(k-1)) is summed instead.
inline double half_bound_excess(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw InputError("half_bound_excess: x must lie in (0, 1)");
  }
  const double e = 1.0 - x;
  if (e < 0.5) {
    numeric::CompensatedSum acc;
    double power = e;  // e^(k-2) for k = 3
    for (int k = 3; k < 200; ++k) {
      const double term = power / (static_cast<double>(k) * (k - 1));
      acc.add(term);
      if (term < 1e-18 * acc.value()) break;
      power *= e;
    }
    return acc.value();
  }
  return x * std::log(x) / (e * e) + 1.0 / e - 0.5;
}

/// x log x/(1-x)^2 + y log y/(1-y)^2 + 1/(1-x) + 1/(1-y) > 1 on (0,1)^2.
/// Reported as lhs = 1, rhs = the left-hand expression, so the margin is
/// the excess over 1.
inline BoundReport scalar_inequality(double x, double y) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) {
    throw InputError("scalar_inequality: x and y must lie in (0, 1)");
  }
  const double excess = half_bound_excess(x) + half_bound_excess(y);
  BoundReport r = BoundReport::less_than(
      1.0, 1.0 + excess,
      "x=" + detail::fmt17(x) + ", y=" + detail::fmt17(y));
  r.margin = excess;
  return r;
}

/// One-variable form: f(x) > 1/2.
inline BoundReport scalar_half_bound(double x) {
  const double excess = half_bound_excess(x);
  BoundReport r =
      BoundReport::less_than(0.5, 0.5 + excess, "x=" + detail::fmt17(x));
  r.margin = excess;
  return r;
}

/// F(a) = a (1/(1-p^a) + 1/(1-q^a) - 1).
inline double lemma_F(double p, double q, double alpha) {
  return alpha * (1.0 / detail::one_minus_power(p, alpha) +
                  1.0 / detail::one_minus_power(q, alpha) - 1.0);
}

/// F'(a) = x log x/(1-x)^2 + y log y/(1-y)^2 + 1/(1-x) + 1/(1-y) - 1 with
/// x = p^a, y = q^a.
inline double lemma_F_derivative(double p, double q, double alpha) {
  const auto term = [alpha](double r) {
    if (r == 0.0) return 1.0;
    const double x = std::exp(alpha * std::log(r));
    const double om = -std::expm1(alpha * std::log(r));
    return x * (alpha * std::log(r)) / (om * om) + 1.0 / om;
  };
  return term(p) + term(q) - 1.0;
}

struct FIncreasingReport {
  /// lhs/rhs are F at the grid pair with the smallest increment;
  /// holds iff F strictly increases along the grid and the derivative
  /// formula matches central differences.
  BoundReport report;
  double min_increment = 0.0;
  double max_derivative_rel_error = 0.0;
  bool increasing = false;
  bool derivative_agrees = false;
};

inline FIncreasingReport F_increasing_check(double p, double q,
                                            std::span<const double> grid) {
  if (!(p >= 0.0 && p < 1.0 && q >= 0.0 && q < 1.0)) {
    throw InputError("F_increasing_check: p and q must lie in [0, 1)");
  }
  if (grid.size() < 2) throw InputError("F_increasing_check: grid too short");
  FIncreasingReport out;
  out.min_increment = kInf;
  double lo_val = 0.0;
  double hi_val = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i + 1] > grid[i])) {
      throw InputError("F_increasing_check: grid must be positive, increasing");
    }
    const double a = lemma_F(p, q, grid[i]);
    const double b = lemma_F(p, q, grid[i + 1]);
    if (b - a < out.min_increment) {
      out.min_increment = b - a;
      lo_val = a;
      hi_val = b;
    }
  }
  for (double alpha : grid) {
    const double h = 1e-4 * alpha;
    const double fd =
        (lemma_F(p, q, alpha + h) - lemma_F(p, q, alpha - h)) / (2.0 * h);
    const double exact = lemma_F_derivative(p, q, alpha);
    const double rel = std::abs(fd - exact) / std::max(std::abs(exact), 1e-300);
    out.max_derivative_rel_error = std::max(out.max_derivative_rel_error, rel);
  }
  out.increasing = out.min_increment > 0.0;
  out.derivative_agrees = out.max_derivative_rel_error < 1e-6;
  out.report = BoundReport::less_than(
      lo_val, hi_val,
      "p=" + detail::fmt17(p) + ", q=" + detail::fmt17(q) +
          ", max F' rel err " + detail::fmt17(out.max_derivative_rel_error),
      0.0);
  out.report.holds = out.increasing && out.derivative_agrees;
  return out;
}

/// H_a(Z) - H_inf(Z) for Z geometric with success probability theta:
/// (log theta - log(1 - (1-theta)^a))/(1-a), and -(1-theta) log(1-theta)/theta
/// at a = 1.
inline double geometric_min_entropy_gap(double theta, Order a) {
  const Geometric z(theta);
  if (theta == 1.0) return 0.0;
  const double log_r = std::log1p(-theta);
  switch (a.kind()) {
    case Order::Kind::Zero: return kInf;
    case Order::Kind::Infinity: return 0.0;
    case Order::Kind::One: return -(1.0 - theta) * log_r / theta;
    case Order::Kind::Two:
    case Order::Kind::Finite:
      break;
  }
  const double alpha = a.alpha();
  if (std::abs(alpha - 1.0) <= kShannonWindow) {
    return geometric_min_entropy_gap(theta, Order::one());
  }
  return (std::log(theta) - std::log(-std::expm1(alpha * log_r))) /
         (1.0 - alpha);
}

/// Closed-form H_a - H_inf along geometric laws; margins shrink to 0 as
/// theta -> 0.
inline std::vector<BoundReport> sharpness_scan(Order a,
                                               std::span<const double> thetas) {
  if (a.is_zero()) throw InputError("sharpness_scan: order must be > 0");
  std::vector<BoundReport> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    if (!(theta > 0.0 && theta < 1.0)) {
      throw InputError("sharpness_scan: theta must lie in (0, 1)");
    }
    out.push_back(BoundReport::less_than(geometric_min_entropy_gap(theta, a),
                                         log_order_constant(a),
                                         "theta=" + detail::fmt17(theta)));
  }
  return out;
}

/// True when the margins of a scan shrink (weakly) as theta decreases.
inline bool margins_shrink_with_theta(std::span<const double> thetas,
                                      std::span<const BoundReport> reports) {
  std::vector<std::size_t> idx(thetas.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return thetas[a] > thetas[b]; });
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (reports[idx[i]].margin > reports[idx[i - 1]].margin) return false;
  }
  return true;
}

}  // namespace renyilab
