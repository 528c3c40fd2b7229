#pragma once

// Distribution of X - Y for iid integer X, Y and the discrete Rényi
// Rogers-Shephard bounds H_a(X-Y) - H_a(X) < log c_rs(a).

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "renyilab/bounds.hpp"
#include "renyilab/core.hpp"
#include "renyilab/entropy.hpp"
#include "renyilab/report.hpp"

namespace renyilab {

/// Law of X - Y for iid X, Y. Symmetric about 0, with mass at 0 equal to
/// the collision probability sum p_i^2.
class DiffPmf {
 public:
  explicit DiffPmf(Pmf pmf) : pmf_(std::move(pmf)) {}

  [[nodiscard]] const Pmf& pmf() const noexcept { return pmf_; }
  [[nodiscard]] double mass_at(std::int64_t k) const noexcept {
    return pmf_.mass_at(k);
  }
  [[nodiscard]] bool is_symmetric() const noexcept {
    const auto p = pmf_.probs();
    for (std::size_t i = 0, j = p.size() - 1; i < j; ++i, --j) {
      if (p[i] != p[j]) return false;
    }
    return pmf_.offset() == -static_cast<std::int64_t>(p.size() / 2);
  }

 private:
  Pmf pmf_;
};

/// Exact O(n^2) correlation: mass(k) = sum_i f(i+k) f(i). Only k >= 0 is
/// summed; negative lags are mirrored so symmetry is exact.
inline DiffPmf difference(const Pmf& f) {
  const auto p = f.probs();
  const std::size_t n = p.size();
  std::vector<double> w(2 * n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    numeric::CompensatedSum acc;
    for (std::size_t i = 0; i + k < n; ++i) acc.add(p[i + k] * p[i]);
    const double v = acc.value();
    if (!(v > 0.0)) {
      throw std::range_error("difference: mass underflows at lag " +
                             std::to_string(k));
    }
    w[n - 1 + k] = v;
    w[n - 1 - k] = v;
  }
  return DiffPmf(Pmf::normalized(-static_cast<std::int64_t>(n - 1), std::move(w)));
}

/// log c_rs(a): log 2 + log c(a) for a in (2, inf], log c(a) on (0, 2].
inline double log_rs_constant(Order a) {
  if (a.is_zero()) throw InputError("order 0 uses check_h0_rs");
  const bool above_two = a.is_infinity() || (a.kind() == Order::Kind::Finite &&
                                              a.alpha() > 2.0);
  return (above_two ? std::numbers::ln2 : 0.0) + log_order_constant(a);
}

inline BoundReport check_discrete_rs(const Pmf& f, Order a) {
  if (a.is_zero()) {
    throw InputError("check_discrete_rs: order 0 is handled by check_h0_rs");
  }
  if (!is_log_concave(f)) {
    throw InputError("check_discrete_rs: pmf is not log-concave");
  }
  const DiffPmf d = difference(f);
  const double lhs = renyi(d.pmf(), a).value - renyi(f, a).value;
  return BoundReport::less_than(
      lhs, log_rs_constant(a),
      "H_" + a.to_string() + "(X-Y) - H_" + a.to_string() + "(X), support " +
          std::to_string(f.size()));
}

/// H_0(X-Y) = log(2n-1) against H_0(X) + log 2 = log(2n).
inline BoundReport check_h0_rs(const Pmf& f) {
  const auto n = static_cast<double>(f.size());
  BoundReport r = BoundReport::less_than(
      std::log(2.0 * n - 1.0), std::log(n) + std::numbers::ln2,
      "support " + std::to_string(f.size()));
  r.margin = std::log1p(1.0 / (2.0 * n - 1.0));
  return r;
}

/// H_inf(X-Y) = H_2(X): the symmetric log-concave difference peaks at 0,
/// where its mass is sum p_i^2.
inline BoundReport identity_inf_two(const Pmf& f) {
  const DiffPmf d = difference(f);
  return BoundReport::equal(renyi(d.pmf(), Order::infinity()).value,
                            renyi(f, Order::two()).value,
                            "support " + std::to_string(f.size()));
}

/// (1/(1-a)) log[(1 + (1-theta)^a) / (2-theta)^a], the iid geometric value
/// of H_a(X-Y) - H_a(X); limits log(2-theta) - (1-theta) log(1-theta)/(2-theta)
/// at a = 1 and log(2-theta) at a = inf.
inline double geometric_rs_gap(double theta, Order a) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InputError("geometric_rs_gap: theta must lie in (0, 1]");
  }
  const double log_two_minus = std::log(2.0 - theta);
  const double log_r = theta == 1.0 ? -kInf : std::log1p(-theta);
  switch (a.kind()) {
    case Order::Kind::Zero:
      throw InputError("geometric_rs_gap: order must be > 0");
    case Order::Kind::Infinity:
      return log_two_minus;
    case Order::Kind::One:
      return theta == 1.0
                 ? 0.0
                 : log_two_minus - (1.0 - theta) * log_r / (2.0 - theta);
    case Order::Kind::Two:
    case Order::Kind::Finite:
      break;
  }
  const double alpha = a.alpha();
  if (std::abs(alpha - 1.0) <= kShannonWindow) {
    return geometric_rs_gap(theta, Order::one());
  }
  const double r_alpha = theta == 1.0 ? 0.0 : std::exp(alpha * log_r);
  return (std::log1p(r_alpha) - alpha * log_two_minus) / (1.0 - alpha);
}

struct RsLimitPoint {
  double theta = 0.0;
  double closed_form = 0.0;
  double direct = 0.0;
  /// True when `direct` came from differencing a truncated pmf; false when
  /// the support was too long and the exact identity
  /// law(X - Y) = tsg(1-theta, 1-theta, 0) was used instead.
  bool truncated_route = false;
  BoundReport report;  // closed_form against log c_rs(a)
  double gap_to_log2 = 0.0;  // |closed_form - log 2|
  bool routes_agree = false;
};

/// Longest truncated support differenced directly in rs_limit_scan.
inline constexpr std::size_t kDirectDifferenceCap = 8000;

inline RsLimitPoint rs_limit_point(double theta, Order a) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InputError("rs_limit_scan: theta must lie in (0, 1)");
  }
  RsLimitPoint pt;
  pt.theta = theta;
  pt.closed_form = geometric_rs_gap(theta, a);

  // Orders below 1 weight the dropped tail by tail^a, so truncate deeper.
  const double tail_tol = a.alpha() < 1.0 ? 1e-280 : 1e-15;
  const Geometric z(theta);
  const double est_len = std::log(tail_tol) / std::log1p(-theta);
  if (est_len <= static_cast<double>(kDirectDifferenceCap)) {
    const Pmf x = z.truncate(tail_tol).pmf;
    pt.direct = renyi(difference(x).pmf(), a).value - renyi(x, a).value;
    pt.truncated_route = true;
  } else {
    const double r = 1.0 - theta;
    const TwoSidedGeo diff(r, r, 0);
    const double h_x = a.is_infinity()
                           ? -std::log(theta)
                           : -std::log(theta) + geometric_min_entropy_gap(theta, a);
    pt.direct = renyi_two_sided_geo(diff, a).value - h_x;
  }
  pt.routes_agree = std::abs(pt.direct - pt.closed_form) < 1e-8;
  pt.gap_to_log2 = std::abs(pt.closed_form - std::numbers::ln2);
  pt.report = BoundReport::less_than(pt.closed_form, log_rs_constant(a),
                                     "theta=" + detail::fmt17(theta));
  return pt;
}

inline std::vector<RsLimitPoint> rs_limit_scan(Order a,
                                               std::span<const double> thetas) {
  if (a.is_zero()) throw InputError("rs_limit_scan: order must be > 0");
  std::vector<RsLimitPoint> out;
  out.reserve(thetas.size());
  for (double theta : thetas) out.push_back(rs_limit_point(theta, a));
  return out;
}

}  // namespace renyilab
