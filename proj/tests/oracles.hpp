#pragma once

// Test-only reference computations. Each one takes a different route from
// the library (long double brute force, explicit enumeration, finite
// differences) so that agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

/// Brute-force Rényi entropy in long double, no compensated sums, no
/// log-space switching. Orders: 0 -> support, 1 -> Shannon, inf -> min.
inline long double renyi(std::span<const double> p, long double alpha) {
  if (alpha == 0.0L) return std::log(static_cast<long double>(p.size()));
  if (std::isinf(alpha)) {
    return -std::log(static_cast<long double>(*std::max_element(p.begin(), p.end())));
  }
  if (alpha == 1.0L) {
    long double s = 0;
    for (double x : p) s -= static_cast<long double>(x) * std::log(static_cast<long double>(x));
    return s;
  }
  long double s = 0;
  for (double x : p) s += std::pow(static_cast<long double>(x), alpha);
  return std::log(s) / (1.0L - alpha);
}

/// Materializes a two-sided geometric law term by term over
/// [mode - half_width, mode + half_width].
inline std::vector<long double> tsg_terms(long double p, long double q,
                                          long double peak, int half_width) {
  std::vector<long double> out;
  for (int j = half_width; j >= 1; --j) out.push_back(peak * std::pow(q, j));
  out.push_back(peak);
  for (int j = 1; j <= half_width; ++j) out.push_back(peak * std::pow(p, j));
  return out;
}

/// Partial sums of the decreasing rearrangement, by explicit sort.
template <typename T>
std::vector<long double> sorted_partial_sums(std::vector<T> v) {
  std::sort(v.begin(), v.end(), std::greater<>{});
  std::vector<long double> out;
  long double s = 0;
  for (T x : v) {
    s += static_cast<long double>(x);
    out.push_back(s);
  }
  return out;
}

/// Second derivative by central differences.
inline double second_difference(const std::function<double(double)>& f,
                                 double t, double h) {
  return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

inline double first_difference(const std::function<double(double)>& f,
                               double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

/// The displayed varentropy quotient evaluated literally in long double.
inline long double varentropy_quotient(std::span<const double> y) {
  long double s0 = 0, s1 = 0, s2 = 0;
  for (double v : y) {
    const long double x = v;
    const long double l = std::log(x);
    s0 += x;
    s1 += x * l;
    s2 += x * l * l;
  }
  return (s2 * s0 - s1 * s1) / (s0 * s0);
}

/// log(t sum x^t), literal.
inline double F_literal(std::span<const double> x, double t) {
  long double s = 0;
  for (double v : x) s += std::pow(static_cast<long double>(v), t);
  return static_cast<double>(std::log(static_cast<long double>(t) * s));
}

inline double logK_literal(std::span<const double> y, double gamma, double t) {
  long double s = 0;
  for (double v : y) s += std::pow(static_cast<long double>(v), t / gamma);
  return static_cast<double>(std::log((static_cast<long double>(t) + gamma) * s));
}

/// Correlation sum by nested loops over all (i, j), bucketed by j - i.
inline std::vector<long double> difference_brute(std::span<const double> p) {
  const std::size_t n = p.size();
  std::vector<long double> out(2 * n - 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j + n - 1 - i] += static_cast<long double>(p[i]) * p[j];
    }
  }
  return out;
}

}  // namespace oracle
