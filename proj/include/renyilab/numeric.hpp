#pragma once

// Small numerical kernels shared by the rest of the library: compensated
// summation, log-sum-exp, bisection on monotone maps, antitonic regression,
// and a portable seeded RNG.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace renyilab {

/// Raised when an input violates a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace numeric {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// log(sum(exp(xs))) with the max factored out. Empty input gives -inf.
inline double log_sum_exp(std::span<const double> xs) noexcept {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(top)) return top;
  CompensatedSum acc;
  for (double x : xs) acc.add(std::exp(x - top));
  return top + std::log(acc.value());
}

/// r(1 - r^n)/(1 - r) = r + r^2 + ... + r^n, for r in [0, 1).
inline double geometric_partial(double r, std::size_t n) noexcept {
  if (r == 0.0 || n == 0) return 0.0;
  const double one_minus_rn = -std::expm1(static_cast<double>(n) * std::log(r));
  return r * one_minus_rn / (1.0 - r);
}

struct BisectionResult {
  double root = 0.0;
  double residual = 0.0;  // value(root) - target
  int iterations = 0;
};

/// Solves value(x) = target for a strictly increasing map on [lo, hi].
/// Stops when |residual| <= tol, the bracket collapses to one ulp, or
/// max_iter is reached. Targets outside [value(lo), value(hi)] clamp to the
/// nearer endpoint.
template <typename Fn>
BisectionResult bisect_increasing(Fn&& value, double target, double lo,
                                  double hi, double tol, int max_iter) {
  const double at_lo = value(lo);
  if (at_lo >= target - tol) return {lo, at_lo - target, 0};
  const double at_hi = value(hi);
  if (at_hi <= target + tol) return {hi, at_hi - target, 0};
  BisectionResult best{lo, at_lo - target, 0};
  for (int it = 1; it <= max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double r = value(mid) - target;
    if (std::abs(r) < std::abs(best.residual)) best = {mid, r, it};
    best.iterations = it;
    if (std::abs(r) <= tol) break;
    if (r < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

/// L2 projection onto non-increasing sequences (pool adjacent violators).
inline std::vector<double> antitonic_regression(std::span<const double> xs) {
  struct Block {
    double mean;
    double weight;
  };
  std::vector<Block> blocks;
  blocks.reserve(xs.size());
  for (double x : xs) {
    blocks.push_back({x, 1.0});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean < blocks.back().mean) {
      const Block b = blocks.back();
      blocks.pop_back();
      Block& a = blocks.back();
      const double w = a.weight + b.weight;
      a.mean = (a.mean * a.weight + b.mean * b.weight) / w;
      a.weight = w;
    }
  }
  std::vector<double> out;
  out.reserve(xs.size());
  for (const Block& b : blocks) {
    out.insert(out.end(), static_cast<std::size_t>(b.weight), b.mean);
  }
  return out;
}

/// Weighted mean and variance of `values` under weights proportional to
/// exp(log_weights), computed in two passes.
struct WeightedMoments {
  double mean = 0.0;
  double variance = 0.0;
};

inline WeightedMoments weighted_moments(std::span<const double> values,
                                        std::span<const double> log_weights) {
  const double lz = log_sum_exp(log_weights);
  std::vector<double> w(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    w[i] = std::exp(log_weights[i] - lz);
  }
  CompensatedSum m;
  for (std::size_t i = 0; i < values.size(); ++i) m.add(w[i] * values[i]);
  const double mean = m.value();
  CompensatedSum v;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    v.add(w[i] * d * d);
  }
  return {mean, v.value()};
}

/// splitmix64-seeded xoshiro256**. Bit-identical output on every platform,
/// unlike the std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    for (auto& s : state_) s = splitmix(seed);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Derives an independent stream seed for trial `index` of a sweep.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix(s);
  }

 private:
  static std::uint64_t splitmix(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

}  // namespace numeric
}  // namespace renyilab
