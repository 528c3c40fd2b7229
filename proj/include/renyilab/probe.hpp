#pragma once

// Numerical probes of two open conjectures on sums of powers:
//   * concavity of F(t) = log(t sum x_n^t) for monotone log-concave x,
//     equivalently varentropy(y) <= 1 for every such sequence y;
//   * log-concavity of K(t) = (t + g) sum y_n^(t/g) for monotone concave y,
//     and the complex strengthening |K(u + iv)| >= K(u).
// Probes report findings; none of them asserts a conjecture.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "renyilab/core.hpp"
#include "renyilab/entropy.hpp"
#include "renyilab/numeric.hpp"
#include "renyilab/report.hpp"

namespace renyilab {

enum class ProbeKind { FConcavity, Varentropy, KLogConcavity, ComplexModulus };

inline std::string_view to_string(ProbeKind k) noexcept {
  switch (k) {
    case ProbeKind::FConcavity: return "F-concavity";
    case ProbeKind::Varentropy: return "varentropy";
    case ProbeKind::KLogConcavity: return "K-logconcavity";
    case ProbeKind::ComplexModulus: return "complex-modulus";
  }
  return "?";
}

/// Conjectured upper bound on worst_value for each probe kind.
inline double conjectured_threshold(ProbeKind k) noexcept {
  return k == ProbeKind::Varentropy ? 1.0 : 0.0;
}

inline constexpr double kProbeTolerance = 1e-10;

struct ProbeWitness {
  std::vector<double> sequence;
  std::complex<double> point;  // t (real) or z
  double gamma = 0.0;          // K probes only
  std::uint64_t seed = 0;      // search probes: seed of the winning trial
};

struct ProbeResult {
  ProbeKind kind = ProbeKind::FConcavity;
  /// Largest value of the probed quantity; the conjecture says it stays at
  /// or below conjectured_threshold(kind). For the complex probe this is
  /// max K(u) - |K(u + iv)|.
  double worst_value = -kInf;
  ProbeWitness witness;
  bool violated = false;
  std::size_t evaluations = 0;
};

namespace detail {

inline void finalize(ProbeResult& r) {
  r.violated = r.worst_value > conjectured_threshold(r.kind) + kProbeTolerance;
}

inline std::vector<double> checked_logs(std::span<const double> x,
                                        std::string_view who) {
  if (x.empty()) throw InputError(std::string(who) + ": empty sequence");
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
      throw InputError(std::string(who) + ": entries must be positive, finite");
    }
    logs[i] = std::log(x[i]);
  }
  return logs;
}

/// Variance of log y under weights proportional to y, given log y.
inline double varentropy_from_logs(std::span<const double> logs) {
  return numeric::weighted_moments(logs, logs).variance;
}

/// Variance of logs under weights proportional to exp(scale * logs).
inline double tilted_log_variance(std::span<const double> logs, double scale) {
  std::vector<double> lw(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) lw[i] = scale * logs[i];
  return numeric::weighted_moments(logs, lw).variance;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// F(t) = log(t sum x^t)
// ---------------------------------------------------------------------------

inline double F_value(std::span<const double> x, double t) {
  if (!(t > 0.0)) throw InputError("F_value: t must be positive");
  const auto logs = detail::checked_logs(x, "F_value");
  std::vector<double> lw(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) lw[i] = t * logs[i];
  return std::log(t) + numeric::log_sum_exp(lw);
}

/// F''(t) = -1/t^2 + (S''S - S'^2)/S^2, i.e. -1/t^2 plus the variance of
/// log x under weights x^t.
inline double F_second_derivative(std::span<const double> x, double t) {
  if (!(t > 0.0)) throw InputError("F_second_derivative: t must be positive");
  const auto logs = detail::checked_logs(x, "F_second_derivative");
  return -1.0 / (t * t) + detail::tilted_log_variance(logs, t);
}

/// [sum y log^2 y * sum y - (sum y log y)^2] / (sum y)^2, the variance of
/// log y under the normalized weights y. Scale invariant.
inline double varentropy(std::span<const double> y) {
  return detail::varentropy_from_logs(detail::checked_logs(y, "varentropy"));
}

/// The fixed non-monotone sequence (1/4, 1/2, 1, 1/2, 1/4) at t = 3,
/// where F is convex.
inline ProbeResult nonmonotone_counterexample() {
  ProbeResult r;
  r.kind = ProbeKind::FConcavity;
  r.witness.sequence = {0.25, 0.5, 1.0, 0.5, 0.25};
  r.witness.point = 3.0;
  r.worst_value = F_second_derivative(r.witness.sequence, 3.0);
  r.evaluations = 1;
  detail::finalize(r);
  return r;
}

// ---------------------------------------------------------------------------
// Varentropy search over monotone log-concave sequences
// ---------------------------------------------------------------------------

struct SearchOptions {
  int hill_climb_steps = 40;
  double initial_step = 0.5;
  double min_step = 1e-6;
};

namespace detail {

/// Log-weights (first entry 0) from non-increasing, non-positive slopes.
inline std::vector<double> logs_from_slopes(std::span<const double> slopes) {
  std::vector<double> logs(slopes.size() + 1, 0.0);
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    logs[i + 1] = logs[i] + slopes[i];
  }
  return logs;
}

/// Projects slopes onto {non-increasing, <= 0}: antitonic fit, then clip.
inline std::vector<double> project_slopes(std::span<const double> slopes) {
  auto fit = numeric::antitonic_regression(slopes);
  for (double& s : fit) s = std::min(s, 0.0);
  return fit;
}

}  // namespace detail

/// Samples monotone log-concave sequences and hill-climbs each one to
/// maximize its varentropy. A step scales one log-weight by exp(step * N),
/// re-projects onto the monotone log-concave cone (antitonic regression on
/// log-slopes) and halves the step on rejection.
inline ProbeResult conjecture51_search(std::size_t trials, std::size_t max_len,
                                       std::uint64_t seed,
                                       SearchOptions opts = {}) {
  if (trials < 1) throw InputError("conjecture51_search: trials must be >= 1");
  if (max_len < 1) throw InputError("conjecture51_search: max_len must be >= 1");
  ProbeResult best;
  best.kind = ProbeKind::Varentropy;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = numeric::Rng::derive(seed, trial);
    numeric::Rng rng(trial_seed);
    const auto len = static_cast<std::size_t>(
        rng.integer(1, static_cast<std::int64_t>(max_len)));
    const Pmf start = random_log_concave(len, rng.next(), true);

    std::vector<double> logs(len);
    for (std::size_t i = 0; i < len; ++i) logs[i] = std::log(start[i]);
    std::vector<double> slopes(len > 1 ? len - 1 : 0);
    for (std::size_t i = 0; i + 1 < len; ++i) slopes[i] = logs[i + 1] - logs[i];
    slopes = detail::project_slopes(slopes);
    logs = detail::logs_from_slopes(slopes);
    double value = detail::varentropy_from_logs(logs);
    ++best.evaluations;

    double step = opts.initial_step;
    for (int it = 0; it < opts.hill_climb_steps && len > 1; ++it) {
      if (step < opts.min_step) break;
      const auto i = static_cast<std::size_t>(
          rng.integer(1, static_cast<std::int64_t>(len - 1)));
      auto cand = logs;
      cand[i] *= std::exp(step * rng.normal());
      std::vector<double> cand_slopes(len - 1);
      for (std::size_t j = 0; j + 1 < len; ++j) {
        cand_slopes[j] = cand[j + 1] - cand[j];
      }
      cand = detail::logs_from_slopes(detail::project_slopes(cand_slopes));
      const double v = detail::varentropy_from_logs(cand);
      ++best.evaluations;
      if (v > value) {
        value = v;
        logs = std::move(cand);
      } else {
        step *= 0.5;
      }
    }

    if (value > best.worst_value) {
      best.worst_value = value;
      best.witness.sequence.resize(len);
      for (std::size_t i = 0; i < len; ++i) {
        best.witness.sequence[i] = std::exp(logs[i]);
      }
      best.witness.point = 1.0;
      best.witness.seed = trial_seed;
    }
  }
  detail::finalize(best);
  return best;
}

// ---------------------------------------------------------------------------
// K(t) = (t + gamma) sum y^(t/gamma)
// ---------------------------------------------------------------------------

/// Positive, monotone and concave: y_n >= (y_{n-1} + y_{n+1})/2.
inline bool is_monotone_concave(std::span<const double> y) {
  for (double v : y) {
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  }
  bool non_inc = true;
  bool non_dec = true;
  for (std::size_t i = 1; i < y.size(); ++i) {
    non_inc = non_inc && y[i] <= y[i - 1];
    non_dec = non_dec && y[i] >= y[i - 1];
  }
  if (!non_inc && !non_dec) return false;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const double mid = 0.5 * (y[i - 1] + y[i + 1]);
    if (y[i] < mid - 1e-12 * mid) return false;
  }
  return true;
}

namespace detail {

inline std::vector<double> checked_K_input(std::span<const double> y,
                                           double gamma, std::string_view who) {
  if (y.empty() || !is_monotone_concave(y)) {
    throw InputError(std::string(who) +
                     ": sequence must be positive, monotone and concave");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InputError(std::string(who) + ": gamma must be positive");
  }
  return checked_logs(y, who);
}

}  // namespace detail

inline double log_K(std::span<const double> y, double gamma, double t) {
  const auto logs = detail::checked_K_input(y, gamma, "log_K");
  if (!(t > -gamma)) throw InputError("log_K: t must exceed -gamma");
  std::vector<double> lw(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) lw[i] = t / gamma * logs[i];
  return std::log(t + gamma) + numeric::log_sum_exp(lw);
}

/// (log K)''(t) = -1/(t+gamma)^2 + Var(log y)/gamma^2 under weights y^(t/gamma).
inline double log_K_second_derivative(std::span<const double> y, double gamma,
                                      double t) {
  const auto logs =
      detail::checked_K_input(y, gamma, "log_K_second_derivative");
  if (!(t > -gamma)) {
    throw InputError("log_K_second_derivative: t must exceed -gamma");
  }
  const double s = t + gamma;
  return -1.0 / (s * s) +
         detail::tilted_log_variance(logs, t / gamma) / (gamma * gamma);
}

inline ProbeResult K_logconcavity_check(std::span<const double> y,
                                        double gamma,
                                        std::span<const double> t_grid) {
  detail::checked_K_input(y, gamma, "K_logconcavity_check");
  ProbeResult r;
  r.kind = ProbeKind::KLogConcavity;
  r.witness.sequence.assign(y.begin(), y.end());
  r.witness.gamma = gamma;
  for (double t : t_grid) {
    if (!(t > -gamma)) {
      throw InputError("K_logconcavity_check: grid point must exceed -gamma");
    }
    const double v = log_K_second_derivative(y, gamma, t);
    ++r.evaluations;
    if (v > r.worst_value) {
      r.worst_value = v;
      r.witness.point = t;
    }
  }
  detail::finalize(r);
  return r;
}

inline std::complex<double> K_complex(std::span<const double> y, double gamma,
                                      std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (double v : y) acc += std::exp(z / gamma * std::log(v));
  return (z + gamma) * acc;
}

inline double K_real(std::span<const double> y, double gamma, double u) {
  numeric::CompensatedSum acc;
  for (double v : y) acc.add(std::exp(u / gamma * std::log(v)));
  return (u + gamma) * acc.value();
}

/// Largest K(Re z) - |K(z)| over the grid; the strengthening predicts <= 0.
inline ProbeResult complex_modulus_check(
    std::span<const double> y, double gamma,
    std::span<const std::complex<double>> z_grid) {
  detail::checked_K_input(y, gamma, "complex_modulus_check");
  ProbeResult r;
  r.kind = ProbeKind::ComplexModulus;
  r.witness.sequence.assign(y.begin(), y.end());
  r.witness.gamma = gamma;
  for (const auto& z : z_grid) {
    if (!(z.real() > -gamma)) {
      throw InputError("complex_modulus_check: Re z must exceed -gamma");
    }
    const double v = K_real(y, gamma, z.real()) - std::abs(K_complex(y, gamma, z));
    ++r.evaluations;
    if (v > r.worst_value) {
      r.worst_value = v;
      r.witness.point = z;
    }
  }
  detail::finalize(r);
  return r;
}

// ---------------------------------------------------------------------------
// Grids, generators, curves
// ---------------------------------------------------------------------------

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(n - 1);
  }
  return out;
}

/// 41 log-spaced points on [0.1, 10].
inline std::vector<double> default_t_grid() {
  auto g = linspace(std::log(0.1), std::log(10.0), 41);
  for (double& t : g) t = std::exp(t);
  return g;
}

/// Points of (-gamma, 4 gamma] for the real K check.
inline std::vector<double> default_K_t_grid(double gamma) {
  return linspace(-0.95 * gamma, 4.0 * gamma, 100);
}

/// 20 x 50 = 1000 points: Re z in [-0.95g, 3g], Im z in [-10g, 10g].
inline std::vector<std::complex<double>> default_complex_grid(double gamma) {
  std::vector<std::complex<double>> out;
  out.reserve(1000);
  for (double u : linspace(-0.95 * gamma, 3.0 * gamma, 20)) {
    for (double v : linspace(-10.0 * gamma, 10.0 * gamma, 50)) {
      out.emplace_back(u, v);
    }
  }
  return out;
}

/// Seeded positive, non-increasing, concave sequence starting at 1:
/// successive drops are sorted ascending.
inline std::vector<double> random_concave_sequence(std::size_t len,
                                                   std::uint64_t seed) {
  if (len < 1) throw InputError("random_concave_sequence needs len >= 1");
  numeric::Rng rng(seed);
  std::vector<double> drops(len - 1);
  for (double& d : drops) d = rng.uniform();
  std::sort(drops.begin(), drops.end());
  const double total = std::accumulate(drops.begin(), drops.end(), 0.0);
  const double final_value = rng.uniform(0.01, 1.0);
  std::vector<double> y(len, 1.0);
  for (std::size_t i = 1; i < len; ++i) {
    const double scaled = total > 0.0 ? drops[i - 1] / total * (1.0 - final_value)
                                      : 0.0;
    y[i] = y[i - 1] - scaled;
  }
  return y;
}

struct CurvePoint {
  double t;
  double value;
  double d2value;
};

inline std::vector<CurvePoint> F_curve(std::span<const double> x,
                                       std::span<const double> t_grid) {
  std::vector<CurvePoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    out.push_back({t, F_value(x, t), F_second_derivative(x, t)});
  }
  return out;
}

inline std::vector<CurvePoint> log_K_curve(std::span<const double> y,
                                           double gamma,
                                           std::span<const double> t_grid) {
  std::vector<CurvePoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    out.push_back({t, log_K(y, gamma, t), log_K_second_derivative(y, gamma, t)});
  }
  return out;
}

/// Empirical check of H_a - H_b <= log(c(a)/c(b)) for a < b on monotone
/// log-concave pmfs. The inequality is implied by concavity of F, so it is
/// a probe, not a theorem.
inline BoundReport order_gap_check(const Pmf& f, Order a, Order b) {
  if (a.is_zero() || !(a.alpha() < b.alpha())) {
    throw InputError("order_gap_check: need 0 < a < b");
  }
  const double lhs = renyi(f, a).value - renyi(f, b).value;
  const double rhs = log_order_constant(a) - log_order_constant(b);
  return BoundReport::less_than(lhs, rhs,
                                "H_" + a.to_string() + " - H_" + b.to_string());
}

}  // namespace renyilab
