#pragma once

// Domain types for integer-supported distributions: Rényi orders, finite
// pmfs, geometric laws and two-sided geometric laws, plus the structural
// predicates and the seeded log-concave generator used across the library.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "renyilab/numeric.hpp"

namespace renyilab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMassTolerance = 1e-12;
inline constexpr double kLogConcaveTolerance = 1e-12;

// ---------------------------------------------------------------------------
// Order
// ---------------------------------------------------------------------------

/// A Rényi order in [0, inf]. Orders within 1e-9 of 1 collapse to One.
class Order {
 public:
  enum class Kind { Zero, One, Two, Infinity, Finite };

  static constexpr double kCoerceToOne = 1e-9;

  static Order zero() noexcept { return Order(Kind::Zero, 0.0); }
  static Order one() noexcept { return Order(Kind::One, 1.0); }
  static Order two() noexcept { return Order(Kind::Two, 2.0); }
  static Order infinity() noexcept { return Order(Kind::Infinity, kInf); }

  static Order of(double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) {
      throw InputError("Rényi order must be in [0, inf]");
    }
    if (alpha == 0.0) return zero();
    if (std::isinf(alpha)) return infinity();
    if (std::abs(alpha - 1.0) <= kCoerceToOne) return one();
    if (alpha == 2.0) return two();
    return Order(Kind::Finite, alpha);
  }

  /// Accepts "inf", "infinity", or a non-negative decimal.
  static Order parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf" || text == "oo") {
      return infinity();
    }
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
      throw InputError("invalid order '" + std::string(text) + "'");
    }
    return of(value);
  }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// Numeric value of the order; +inf for Infinity.
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  [[nodiscard]] bool is_one() const noexcept { return kind_ == Kind::One; }
  [[nodiscard]] bool is_infinity() const noexcept {
    return kind_ == Kind::Infinity;
  }

  [[nodiscard]] std::string to_string() const {
    switch (kind_) {
      case Kind::Zero: return "0";
      case Kind::One: return "1";
      case Kind::Two: return "2";
      case Kind::Infinity: return "inf";
      case Kind::Finite: break;
    }
    std::ostringstream os;
    os.precision(17);
    os << alpha_;
    return os.str();
  }

  friend bool operator==(const Order&, const Order&) = default;

 private:
  Order(Kind kind, double alpha) noexcept : kind_(kind), alpha_(alpha) {}
  Kind kind_;
  double alpha_;
};

/// The order grid used by the monotonicity and sweep properties.
inline std::vector<Order> standard_order_grid() {
  return {Order::zero(),  Order::of(0.25), Order::of(0.5),
          Order::one(),   Order::of(1.5),  Order::two(),
          Order::of(3.0), Order::of(10.0), Order::infinity()};
}

// ---------------------------------------------------------------------------
// Pmf
// ---------------------------------------------------------------------------

/// Probability mass function on a contiguous integer interval
/// [offset, offset + size). Every stored weight is strictly positive, so the
/// support is contiguous by construction.
class Pmf {
 public:
  Pmf(std::int64_t offset, std::vector<double> probs)
      : offset_(offset), probs_(std::move(probs)) {
    if (probs_.empty()) throw InputError("pmf support must be non-empty");
    for (double p : probs_) {
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw InputError("pmf weights must be finite and strictly positive");
      }
    }
    const double total = numeric::sum(probs_);
    if (std::abs(total - 1.0) > kMassTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "pmf weights sum to " << total << ", expected 1";
      throw InputError(os.str());
    }
  }

  /// Divides positive weights by their (compensated) sum.
  static Pmf normalized(std::int64_t offset, std::vector<double> weights) {
    if (weights.empty()) throw InputError("pmf support must be non-empty");
    const double total = numeric::sum(weights);
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw InputError("weights must have a positive finite sum");
    }
    for (double& w : weights) w /= total;
    return Pmf(offset, std::move(weights));
  }

  static Pmf point_mass(std::int64_t at = 0) { return Pmf(at, {1.0}); }

  static Pmf uniform(std::size_t n, std::int64_t offset = 0) {
    if (n == 0) throw InputError("uniform pmf needs n >= 1");
    return Pmf(offset, std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  [[nodiscard]] std::int64_t offset() const noexcept { return offset_; }
  [[nodiscard]] std::span<const double> probs() const noexcept {
    return probs_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return probs_[i]; }
  [[nodiscard]] double mass_at(std::int64_t k) const noexcept {
    const std::int64_t i = k - offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(probs_.size())) return 0.0;
    return probs_[static_cast<std::size_t>(i)];
  }
  [[nodiscard]] double max() const noexcept {
    return *std::max_element(probs_.begin(), probs_.end());
  }
  /// Index (into probs) of the leftmost maximal weight.
  [[nodiscard]] std::size_t argmax() const noexcept {
    return static_cast<std::size_t>(
        std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
  }
  [[nodiscard]] double total() const noexcept { return numeric::sum(probs_); }

  /// Reflection k -> -k.
  [[nodiscard]] Pmf mirrored() const {
    std::vector<double> rev(probs_.rbegin(), probs_.rend());
    const auto last = offset_ + static_cast<std::int64_t>(probs_.size()) - 1;
    return Pmf(-last, std::move(rev));
  }

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::int64_t offset_;
  std::vector<double> probs_;
};

/// A finite truncation of an infinite-support law.
struct Truncation {
  Pmf pmf;
  bool renormalized = false;
  double dropped_mass = 0.0;
};

// ---------------------------------------------------------------------------
// Predicates and rearrangement
// ---------------------------------------------------------------------------

/// p_i^2 >= p_{i-1} p_{i+1} (1 - rel_tol) at every interior index.
inline bool is_log_concave(const Pmf& f,
                           double rel_tol = kLogConcaveTolerance) noexcept {
  const auto p = f.probs();
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (p[i] * p[i] < p[i - 1] * p[i + 1] * (1.0 - rel_tol)) return false;
  }
  return true;
}

inline bool is_monotone(const Pmf& f) noexcept {
  const auto p = f.probs();
  const bool non_increasing =
      std::adjacent_find(p.begin(), p.end(), std::less<>{}) == p.end();
  const bool non_decreasing =
      std::adjacent_find(p.begin(), p.end(), std::greater<>{}) == p.end();
  return non_increasing || non_decreasing;
}

/// Weights sorted descending; ties keep ascending original index.
inline std::vector<double> decreasing_rearrangement(const Pmf& f) {
  std::vector<double> out(f.probs().begin(), f.probs().end());
  std::stable_sort(out.begin(), out.end(), std::greater<>{});
  return out;
}

// ---------------------------------------------------------------------------
// Geometric law
// ---------------------------------------------------------------------------

/// Geometric law on {0, 1, ...} with success probability theta:
/// mass theta (1 - theta)^k.
class Geometric {
 public:
  explicit Geometric(double theta) : theta_(theta) {
    if (!(theta > 0.0 && theta <= 1.0)) {
      throw InputError("geometric parameter theta must lie in (0, 1]");
    }
  }

  [[nodiscard]] double theta() const noexcept { return theta_; }
  /// Ratio between consecutive masses, 1 - theta.
  [[nodiscard]] double ratio() const noexcept { return 1.0 - theta_; }

  [[nodiscard]] double mass(std::int64_t k) const noexcept {
    if (k < 0) return 0.0;
    return theta_ * tail(k);
  }
  /// P(X >= k) = (1 - theta)^k.
  [[nodiscard]] double tail(std::int64_t k) const noexcept {
    if (k <= 0) return 1.0;
    if (theta_ == 1.0) return 0.0;
    return std::exp(static_cast<double>(k) * std::log1p(-theta_));
  }
  /// sum_k mass(k)^alpha = theta^alpha / (1 - (1 - theta)^alpha).
  [[nodiscard]] double power_sum(double alpha) const noexcept {
    if (theta_ == 1.0) return 1.0;
    const double denom = -std::expm1(alpha * std::log1p(-theta_));
    return std::pow(theta_, alpha) / denom;
  }

  /// Smallest support {0..n-1} whose tail mass falls below tail_tol,
  /// renormalized to unit mass.
  [[nodiscard]] Truncation truncate(double tail_tol = 1e-15) const {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
      throw InputError("truncation tolerance must lie in (0, 1)");
    }
    if (theta_ == 1.0) return {Pmf::point_mass(0), false, 0.0};
    const double log_r = std::log1p(-theta_);
    auto n = static_cast<std::int64_t>(std::ceil(std::log(tail_tol) / log_r));
    n = std::max<std::int64_t>(n, 1);
    while (tail(n) >= tail_tol) ++n;
    std::vector<double> w(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
      w[static_cast<std::size_t>(k)] =
          theta_ * std::exp(static_cast<double>(k) * log_r);
    }
    const double dropped = tail(n);
    const double kept = -std::expm1(static_cast<double>(n) * log_r);
    for (double& x : w) x /= kept;
    return {Pmf(0, std::move(w)), dropped > 0.0, dropped};
  }

 private:
  double theta_;
};

inline Geometric geometric(double theta) { return Geometric(theta); }

// ---------------------------------------------------------------------------
// Two-sided geometric law
// ---------------------------------------------------------------------------

/// phi(n) = peak * p^(n - m) for n >= m and peak * q^(m - n) for n <= m,
/// with 0^0 = 1. The peak defaults to the normalizer (1-p)(1-q)/(1-pq);
/// an explicit peak lets a caller pin the maximum exactly.
class TwoSidedGeo {
 public:
  TwoSidedGeo(double p, double q, std::int64_t mode)
      : TwoSidedGeo(p, q, mode, normalizer(check(p), check(q))) {}

  /// Peak must agree with the analytic normalizer to relative 1e-9.
  static TwoSidedGeo with_peak(double p, double q, std::int64_t mode,
                               double peak) {
    const double z = normalizer(check(p), check(q));
    if (!(peak > 0.0) || std::abs(peak - z) > 1e-9 * z) {
      throw InputError("two-sided geometric peak does not match normalizer");
    }
    return TwoSidedGeo(p, q, mode, peak);
  }

  static double normalizer(double p, double q) noexcept {
    return (1.0 - p) * (1.0 - q) / (1.0 - p * q);
  }

  [[nodiscard]] double p() const noexcept { return p_; }
  [[nodiscard]] double q() const noexcept { return q_; }
  [[nodiscard]] std::int64_t mode() const noexcept { return mode_; }
  [[nodiscard]] double peak() const noexcept { return peak_; }
  [[nodiscard]] bool is_point_mass() const noexcept {
    return p_ == 0.0 && q_ == 0.0;
  }

  [[nodiscard]] double mass(std::int64_t n) const noexcept {
    const std::int64_t j = n - mode_;
    if (j == 0) return peak_;
    const double r = j > 0 ? p_ : q_;
    if (r == 0.0) return 0.0;
    return peak_ * std::exp(static_cast<double>(j > 0 ? j : -j) * std::log(r));
  }

  /// peak * (1/(1-p) + 1/(1-q) - 1).
  [[nodiscard]] double total_mass() const noexcept {
    return peak_ * (1.0 / (1.0 - p_) + 1.0 / (1.0 - q_) - 1.0);
  }

  /// Finite window around the mode holding all but tail_tol of the mass,
  /// renormalized.
  [[nodiscard]] Truncation truncate(double tail_tol = 1e-15) const {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
      throw InputError("truncation tolerance must lie in (0, 1)");
    }
    const auto side_len = [&](double r) -> std::int64_t {
      // terms j = 1..n kept; dropped mass peak r^(n+1)/(1-r) < tail_tol/2
      if (r == 0.0) return 0;
      std::int64_t n = 0;
      double dropped = peak_ * r / (1.0 - r);
      double term = r;
      while (dropped >= 0.5 * tail_tol) {
        ++n;
        term *= r;
        dropped = peak_ * term / (1.0 - r);
      }
      return n;
    };
    const std::int64_t right = side_len(p_);
    const std::int64_t left = side_len(q_);
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(left + right + 1));
    for (std::int64_t n = mode_ - left; n <= mode_ + right; ++n) {
      w.push_back(mass(n));
    }
    const double kept = numeric::sum(w);
    const double dropped = total_mass() - kept;
    for (double& x : w) x /= kept;
    return {Pmf(mode_ - left, std::move(w)), left + right > 0,
            std::max(dropped, 0.0)};
  }

  friend bool operator==(const TwoSidedGeo&, const TwoSidedGeo&) = default;

 private:
  TwoSidedGeo(double p, double q, std::int64_t mode, double peak) noexcept
      : p_(p), q_(q), mode_(mode), peak_(peak) {}

  static double check(double r) {
    if (!(r >= 0.0 && r < 1.0)) {
      throw InputError("two-sided geometric ratios must lie in [0, 1)");
    }
    return r;
  }

  double p_;
  double q_;
  std::int64_t mode_;
  double peak_;
};

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

/// Seeded random log-concave pmf on {0..len-1}. Log-weights are built from
/// strictly negative second differences, so the result passes
/// is_log_concave(f, 0). With monotone = true the weights are non-increasing.
inline Pmf random_log_concave(std::size_t len, std::uint64_t seed,
                              bool monotone = false) {
  if (len < 1) throw InputError("random_log_concave needs len >= 1");
  if (len == 1) return Pmf::point_mass(0);

  numeric::Rng rng(seed);
  const double scale = std::exp(rng.uniform(std::log(1e-3), std::log(3.0)));
  std::vector<double> curvature(len - 1);
  for (double& e : curvature) {
    const double u = rng.uniform();
    e = 1e-9 + scale * u * u;
  }
  const double bend = std::accumulate(curvature.begin(), curvature.end(), 0.0);

  double slope = monotone ? -scale * rng.uniform()
                          : rng.uniform() * bend + 0.5 * scale * rng.uniform(-1, 1);
  std::vector<double> logw(len);
  logw[0] = 0.0;
  for (std::size_t i = 1; i < len; ++i) {
    logw[i] = logw[i - 1] + slope;
    slope -= curvature[i - 1];
  }

  // Keep the dynamic range within e^300 so pairwise products stay normal.
  const auto [lo, hi] = std::minmax_element(logw.begin(), logw.end());
  const double top = *hi;
  const double range = top - *lo;
  const double shrink = range > 300.0 ? 300.0 / range : 1.0;
  std::vector<double> w(len);
  for (std::size_t i = 0; i < len; ++i) {
    w[i] = std::exp((logw[i] - top) * shrink);
  }
  return Pmf::normalized(0, std::move(w));
}

}  // namespace renyilab
