#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "renyilab/diffconv.hpp"

namespace renyilab {
namespace {

constexpr double kLn2 = std::numbers::ln2;

TEST(Difference, SmallExamples) {
  const DiffPmf d = difference(Pmf(0, {0.5, 0.5}));
  EXPECT_EQ(d.pmf().offset(), -1);
  EXPECT_DOUBLE_EQ(d.mass_at(-1), 0.25);
  EXPECT_DOUBLE_EQ(d.mass_at(0), 0.5);
  EXPECT_DOUBLE_EQ(d.mass_at(1), 0.25);
  EXPECT_TRUE(d.is_symmetric());
  EXPECT_EQ(difference(Pmf::point_mass(9)).pmf(), Pmf::point_mass(0));
}

TEST(Difference, MatchesNestedLoopOracle) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Pmf f = random_log_concave(1 + seed % 40, seed);
    const DiffPmf d = difference(f);
    const auto want = oracle::difference_brute(f.probs());
    ASSERT_EQ(d.pmf().size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
      EXPECT_NEAR(d.pmf()[k], static_cast<double>(want[k]),
                  1e-15 + 1e-13 * static_cast<double>(want[k]));
    }
  }
}

TEST(Difference, SymmetricLogConcavePeakedAtZero) {
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const Pmf f = random_log_concave(1 + seed % 50, seed);
    const DiffPmf d = difference(f);
    ASSERT_TRUE(d.is_symmetric());
    ASSERT_TRUE(is_log_concave(d.pmf())) << "seed " << seed;
    ASSERT_EQ(d.pmf().max(), d.mass_at(0));
  }
}

TEST(Difference, TranslationInvariant) {
  const Pmf f(0, {0.2, 0.5, 0.3});
  const Pmf g(-17, {0.2, 0.5, 0.3});
  EXPECT_EQ(difference(f).pmf(), difference(g).pmf());
}

TEST(Difference, GeometricMatchesTwoSidedLaw) {
  // X - Y for iid geometric theta is tsg(1-theta, 1-theta, 0)
  const double theta = 0.3;
  const Pmf x = Geometric(theta).truncate(1e-300).pmf;
  const DiffPmf d = difference(x);
  const TwoSidedGeo g(1 - theta, 1 - theta, 0);
  for (std::int64_t k = -20; k <= 20; ++k) {
    EXPECT_NEAR(d.mass_at(k), g.mass(k), 1e-15) << k;
  }
}

TEST(RsConstant, Values) {
  EXPECT_NEAR(log_rs_constant(Order::two()), kLn2, 1e-15);
  EXPECT_NEAR(log_rs_constant(Order::one()), 1.0, 1e-15);
  EXPECT_NEAR(log_rs_constant(Order::infinity()), kLn2, 1e-15);
  EXPECT_NEAR(log_rs_constant(Order::of(3.0)), kLn2 + std::log(3.0) / 2.0, 1e-15);
  EXPECT_THROW(log_rs_constant(Order::zero()), InputError);
}

TEST(DiscreteRs, GeometricHalfAtOrderTwo) {
  const Pmf x = Geometric(0.5).truncate(1e-300).pmf;
  const BoundReport r = check_discrete_rs(x, Order::two());
  EXPECT_NEAR(r.lhs, std::log(9.0 / 5.0), 1e-12);
  EXPECT_NEAR(geometric_rs_gap(0.5, Order::two()), std::log(9.0 / 5.0), 1e-15);
  EXPECT_TRUE(r.strict());
}

TEST(DiscreteRs, HoldsOnRandomLogConcave) {
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const Pmf f = random_log_concave(1 + seed % 50, seed);
    for (double a : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0, kInf}) {
      ASSERT_TRUE(check_discrete_rs(f, Order::of(a)).holds)
          << "seed " << seed << " a " << a;
    }
    const BoundReport h0 = check_h0_rs(f);
    ASSERT_TRUE(h0.strict());
    ASSERT_NEAR(h0.margin, h0.rhs - h0.lhs, 1e-14);
  }
}

TEST(DiscreteRs, Rejects) {
  EXPECT_THROW(check_discrete_rs(Pmf::uniform(2), Order::zero()), InputError);
  EXPECT_THROW(check_discrete_rs(Pmf(0, {0.4, 0.1, 0.5}), Order::one()), InputError);
}

TEST(IdentityInfTwo, HoldsExactly) {
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const Pmf f = random_log_concave(1 + seed % 50, seed);
    const BoundReport r = identity_inf_two(f);
    ASSERT_TRUE(r.holds) << "seed " << seed << " margin " << r.margin;
    ASSERT_LE(std::abs(r.margin), 1e-12);
  }
}

TEST(GeometricRsGap, LimitsAreContinuous) {
  for (double theta : {0.9, 0.5, 0.1, 1e-3}) {
    EXPECT_NEAR(geometric_rs_gap(theta, Order::of(1.0 + 1e-4)),
                geometric_rs_gap(theta, Order::one()), 1e-3);
    EXPECT_NEAR(geometric_rs_gap(theta, Order::of(1e6)),
                geometric_rs_gap(theta, Order::infinity()), 1e-4);
  }
  EXPECT_EQ(geometric_rs_gap(1.0, Order::two()), 0.0);
  EXPECT_THROW(geometric_rs_gap(0.0, Order::two()), InputError);
}

TEST(GeometricRsGap, MatchesTruncatedDifference) {
  for (double theta : {0.7, 0.2, 0.05}) {
    const Pmf x = Geometric(theta).truncate(1e-300).pmf;
    const DiffPmf d = difference(x);
    for (double a : {0.5, 1.0, 2.0, 3.0, kInf}) {
      const long double direct =
          oracle::renyi(d.pmf().probs(), a) - oracle::renyi(x.probs(), a);
      EXPECT_NEAR(geometric_rs_gap(theta, Order::of(a)), static_cast<double>(direct),
                  1e-10)
          << theta << " " << a;
    }
  }
}

TEST(RsLimit, ApproachesLog2) {
  const std::vector<double> thetas{0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5};
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    const auto pts = rs_limit_scan(Order::of(a), thetas);
    for (const auto& pt : pts) {
      EXPECT_TRUE(pt.routes_agree) << a << " " << pt.theta << " " << pt.direct
                                   << " vs " << pt.closed_form;
      EXPECT_TRUE(pt.report.holds);
    }
    EXPECT_LT(pts.back().gap_to_log2, 1e-4) << a;
    EXPECT_TRUE(pts.front().truncated_route);
    EXPECT_FALSE(pts.back().truncated_route);
  }
}

}  // namespace
}  // namespace renyilab
