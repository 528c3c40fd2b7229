#pragma once

// Majorization of pmfs (including against two-sided geometric laws with
// infinite support), the extremal two-sided geometric minorant of a
// log-concave pmf, and the Schur-concavity check built on top of both.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "renyilab/core.hpp"
#include "renyilab/entropy.hpp"
#include "renyilab/report.hpp"

namespace renyilab {

/// Raised when an operation's precondition (e.g. majorization) fails.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct MajorizationReport {
  static constexpr double kPartialSumTolerance = 1e-12;
  static constexpr double kMassGapTolerance = 1e-10;

  bool holds = false;
  /// 1-based k of the first partial sum where f falls short of g.
  std::optional<std::size_t> first_violation_index;
  /// Smallest partial-sum gap sum_k f↓ - sum_k g↓ (including the limit k->inf).
  double min_margin = 0.0;
  /// Total mass of f minus total mass of g.
  double total_mass_gap = 0.0;
};

namespace detail {

/// Folds a stream of partial-sum gaps into a report.
class MarginTracker {
 public:
  void observe(std::size_t k, double margin) {
    if (margin < min_) min_ = margin;
    if (!first_ && margin < -MajorizationReport::kPartialSumTolerance) {
      first_ = k;
    }
  }
  MajorizationReport finish(double mass_gap) const {
    MajorizationReport r;
    r.first_violation_index = first_;
    r.min_margin = std::min(min_, mass_gap);
    r.total_mass_gap = mass_gap;
    r.holds = !first_ &&
              std::abs(mass_gap) <= MajorizationReport::kMassGapTolerance &&
              r.min_margin >= -MajorizationReport::kPartialSumTolerance;
    return r;
  }

 private:
  double min_ = kInf;
  std::optional<std::size_t> first_;
};

}  // namespace detail

/// f ≻ g: partial sums of f↓ dominate those of g↓ and the totals agree.
inline MajorizationReport majorizes(const Pmf& f, const Pmf& g) {
  const auto fd = decreasing_rearrangement(f);
  const auto gd = decreasing_rearrangement(g);
  const std::size_t n = std::max(fd.size(), gd.size());
  numeric::CompensatedSum fs;
  numeric::CompensatedSum gs;
  detail::MarginTracker tracker;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < fd.size()) fs.add(fd[k]);
    if (k < gd.size()) gs.add(gd[k]);
    tracker.observe(k + 1, fs.value() - gs.value());
  }
  return tracker.finish(fs.value() - gs.value());
}

/// f ≻ g for a two-sided geometric g. The rearrangement of g is the peak
/// followed by a greedy merge of its two geometric tails (right tail first
/// on ties); partial sums use closed-form geometric sums. Beyond the support
/// of f its partial sums are constant, and those of g only grow towards the
/// total mass, so the limiting gap is the total-mass gap.
inline MajorizationReport majorizes_tsg(const Pmf& f, const TwoSidedGeo& g) {
  const auto fd = decreasing_rearrangement(f);
  const double peak = g.peak();
  const double p = g.p();
  const double q = g.q();
  const double log_p = p > 0.0 ? std::log(p) : -kInf;
  const double log_q = q > 0.0 ? std::log(q) : -kInf;

  numeric::CompensatedSum fs;
  detail::MarginTracker tracker;
  std::size_t right = 0;  // tail terms taken from each side so far
  std::size_t left = 0;
  for (std::size_t k = 0; k < fd.size(); ++k) {
    fs.add(fd[k]);
    if (k > 0) {
      // Next candidates are peak p^(right+1) and peak q^(left+1).
      const double next_right = static_cast<double>(right + 1) * log_p;
      const double next_left = static_cast<double>(left + 1) * log_q;
      if (next_right >= next_left) {
        ++right;
      } else {
        ++left;
      }
    }
    const double gk = peak * (1.0 + numeric::geometric_partial(p, right) +
                              numeric::geometric_partial(q, left));
    tracker.observe(k + 1, fs.value() - gk);
  }
  return tracker.finish(fs.value() - g.total_mass());
}

struct ExtremalDiagnostics {
  double right_residual = 0.0;  // mass(phi right side) - mass(f right side)
  double left_residual = 0.0;
  int right_iterations = 0;
  int left_iterations = 0;
  bool mirrored = false;
};

namespace detail {

inline constexpr double kRatioCeiling = 1.0 - 1e-15;
inline constexpr double kBisectionTolerance = 1e-14;
inline constexpr int kBisectionMaxIter = 200;

/// Ratio r with peak * sum_{j>=0} r^j = side_mass.
inline numeric::BisectionResult solve_side_ratio(double peak,
                                                 double side_mass) {
  return numeric::bisect_increasing(
      [peak](double r) { return peak / (1.0 - r); }, side_mass, 0.0,
      kRatioCeiling, kBisectionTolerance, kBisectionMaxIter);
}

}  // namespace detail

/// The two-sided geometric law majorized by a log-concave f with the same
/// maximum. The split point is the leftmost argmax; when the left side then
/// carries more mass, the rightmost argmax is used instead (the mirror
/// image of the same rule). Each side's ratio solves
/// max(f) / (1 - r) = mass of f on that side (mode included) by bisection.
inline TwoSidedGeo extremal_tsg(const Pmf& f,
                                ExtremalDiagnostics* diagnostics = nullptr) {
  if (!is_log_concave(f)) {
    throw InputError("extremal_tsg requires a log-concave pmf");
  }
  const auto probs = f.probs();
  const double peak = f.max();

  const auto side_masses = [&](std::size_t split) {
    numeric::CompensatedSum right;
    numeric::CompensatedSum left;
    for (std::size_t i = split; i < probs.size(); ++i) right.add(probs[i]);
    for (std::size_t i = 0; i <= split; ++i) left.add(probs[i]);
    return std::pair{right.value(), left.value()};
  };

  std::size_t split = f.argmax();
  auto [right_mass, left_mass] = side_masses(split);
  bool mirrored = false;
  if (right_mass < left_mass) {
    std::size_t last = probs.size() - 1;
    while (probs[last] != peak) --last;
    split = last;
    std::tie(right_mass, left_mass) = side_masses(split);
    mirrored = true;
  }

  const auto rp = detail::solve_side_ratio(peak, right_mass);
  const auto lq = detail::solve_side_ratio(peak, left_mass);
  if (diagnostics) {
    *diagnostics = {rp.residual, lq.residual, rp.iterations, lq.iterations,
                    mirrored};
  }
  const std::int64_t mode = f.offset() + static_cast<std::int64_t>(split);
  return TwoSidedGeo::with_peak(rp.root, lq.root, mode, peak);
}

/// Schur concavity: f ≻ g implies H_a(f) <= H_a(g).
inline BoundReport schur_check(const Pmf& f, const Pmf& g, Order a) {
  if (!majorizes(f, g).holds) {
    throw PreconditionError("schur_check: f does not majorize g");
  }
  std::ostringstream w;
  w << "H_" << a.to_string() << "(f) <= H_" << a.to_string() << "(g), pmf g";
  return BoundReport::less_than(renyi(f, a).value, renyi(g, a).value, w.str(),
                                1e-10);
}

inline BoundReport schur_check(const Pmf& f, const TwoSidedGeo& g, Order a) {
  if (!majorizes_tsg(f, g).holds) {
    throw PreconditionError("schur_check: f does not majorize g");
  }
  std::ostringstream w;
  w.precision(17);
  w << "H_" << a.to_string() << "(f) <= H_" << a.to_string()
    << "(phi), phi = tsg(p=" << g.p() << ", q=" << g.q() << ", m=" << g.mode()
    << ")";
  return BoundReport::less_than(renyi(f, a).value,
                                renyi_two_sided_geo(g, a).value, w.str(),
                                1e-10);
}

}  // namespace renyilab
