// Copyright 2026 The Squareplus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sqp/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace sqp::verify {
namespace {

const GridSpec kWide{-20.0, 20.0, 2001};
const GridSpec kGradGrid{-10.0, 10.0, 401};

TEST(GridSpec, LinearHitsEndpoints) {
  const auto xs = kWide.points();
  ASSERT_EQ(xs.size(), 2001u);
  EXPECT_EQ(xs.front(), -20.0);
  EXPECT_EQ(xs.back(), 20.0);
  EXPECT_EQ(xs[1000], 0.0);
  EXPECT_TRUE(std::is_sorted(xs.begin(), xs.end()));
}

TEST(GridSpec, LogSymmetricMirrorsAndSkipsZero) {
  const GridSpec g{1e-3, 20.0, 10, Spacing::LogSymmetric};
  const auto xs = g.points();
  ASSERT_EQ(xs.size(), 10u);
  EXPECT_TRUE(std::is_sorted(xs.begin(), xs.end()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NE(xs[i], 0.0);
    EXPECT_EQ(xs[i], -xs[xs.size() - 1 - i]);
  }
  EXPECT_EQ(xs.back(), 20.0);
  EXPECT_EQ(xs[5], 1e-3);
}

TEST(GridSpec, Validation) {
  EXPECT_THROW((GridSpec{1.0, 1.0, 10}.points()), UsageError);
  EXPECT_THROW((GridSpec{0.0, 1.0, 1}.points()), UsageError);
  EXPECT_THROW((GridSpec{-1.0, 1.0, 10, Spacing::LogSymmetric}.points()), UsageError);
  EXPECT_THROW((GridSpec{1.0, 2.0, 9, Spacing::LogSymmetric}.points()), UsageError);
  EXPECT_THROW(parse_spacing("cubic"), UsageError);
  EXPECT_EQ(default_grid().count, 2001u);
}

TEST(BoundVsSoftplus, HoldsAtThresholdAndAbove) {
  EXPECT_TRUE(check_bound_vs_softplus(kBSoftplusMatch, kWide).passed);
  EXPECT_TRUE(check_bound_vs_softplus(4.0, kWide).passed);
}

TEST(BoundVsSoftplus, FailsBelowThresholdNearOrigin) {
  const auto r = check_bound_vs_softplus(1.0, kWide);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.worst_x, 0.0);
  // ln 2 - sqrt(1)/2
  EXPECT_NEAR(r.worst_error, 0.19314718055994531, 1e-15);
}

TEST(BoundVsSoftplus, JustBelowThresholdFails) {
  // Numerical support for the threshold being tight: any b visibly below it
  // breaks the bound at the origin.
  EXPECT_FALSE(check_bound_vs_softplus(kBSoftplusMatch * (1 - 1e-9), kWide).passed);
}

TEST(OriginIdentities, Examples) {
  const double four[] = {4.0};
  for (const auto& r : check_origin_identities(four)) EXPECT_TRUE(r.passed) << r.check_name;
  const double zero[] = {0.0};
  const auto rz = check_origin_identities(zero);
  ASSERT_EQ(rz.size(), 4u);
  EXPECT_TRUE(rz.back().passed);
  const double spread[] = {1e-8, 1.0, 1e8};
  const auto rs = check_origin_identities(spread);
  ASSERT_EQ(rs.size(), 6u);
  for (const auto& r : rs) EXPECT_TRUE(r.passed) << r.check_name;
}

TEST(ScaleIdentity, Examples) {
  // (6 + sqrt(40)) / 4 == (3 + sqrt(10)) / 2
  EXPECT_DOUBLE_EQ(squareplus(6.0, 4.0) / 2.0, 3.0811388300841897);
  EXPECT_DOUBLE_EQ(squareplus(3.0, rescale_b(2.0, 4.0)), 3.0811388300841897);
  const double two[] = {2.0};
  EXPECT_TRUE(check_scale_identity(two, 4.0, GridSpec{2.0, 3.0, 2}).passed);

  const double one[] = {1.0};
  const auto r1 = check_scale_identity(one, 7.25, kWide);
  EXPECT_TRUE(r1.passed);
  EXPECT_EQ(r1.worst_error, 0.0);

  const double several[] = {0.5, 3.0, 10.0};
  EXPECT_TRUE(check_scale_identity(several, kBSoftplusMatch, GridSpec{-10.0, 10.0, 2001}).passed);
}

TEST(Gradients, PassForSmoothAndReluCases) {
  for (double b : {4.0, kBSoftplusMatch, 0.5}) {
    for (const auto& r : check_gradients(b, kGradGrid)) EXPECT_TRUE(r.passed) << r.check_name;
  }
  for (const auto& r : check_gradients(0.0, kGradGrid)) {
    EXPECT_TRUE(r.passed) << r.check_name;
    EXPECT_GE(std::abs(r.worst_x), 0.1);
  }
}

TEST(Gradients, DetectsAWrongDerivative) {
  // Sanity check of the oracle itself: differences of squareplus are far from
  // the algebraic sigmoid without the 1/2 scale and shift.
  double worst = 0.0;
  for (const double x : kGradGrid.points()) {
    const double h = std::max(1.0, std::abs(x)) * std::cbrt(std::numeric_limits<double>::epsilon());
    const double fd = (squareplus(x + h, 4.0) - squareplus(x - h, 4.0)) / (2 * h);
    worst = std::max(worst, std::abs(fd - algebraic_sigmoid(x / 2.0)));
  }
  EXPECT_GT(worst, 0.1);
}

TEST(StudentT, Examples) {
  EXPECT_DOUBLE_EQ(student_t_pdf(0.0, 2.0), 0.35355339059327376);
  EXPECT_DOUBLE_EQ(squareplus_d2(0.0, 2.0), 0.35355339059327376);
  EXPECT_DOUBLE_EQ(student_t_pdf(1.0, 2.0), 0.19245008972987525);
  // Standard Cauchy is t(1): 1 / pi at 0.
  EXPECT_DOUBLE_EQ(student_t_pdf(0.0, 1.0), 0.31830988618379067);
  EXPECT_TRUE(check_student_t_pdf(GridSpec{-8.0, 8.0, 1601}).passed);
}

TEST(AlgebraicSigmoid, MatchesFirstDerivative) {
  for (double b : {0.5, 1.0, kBSoftplusMatch, 4.0}) {
    EXPECT_TRUE(check_algebraic_sigmoid(b, kWide).passed) << b;
  }
  EXPECT_THROW(check_algebraic_sigmoid(0.0, kWide), DomainError);
}

// Independent prediction of where the naive gap vanishes: the true gap is
// log1p(exp(-x)) ~ exp(-x), and it survives rounding only while it is at
// least half an ulp of x.
template <class T>
double predicted_breakdown() {
  for (int i = 0; i <= 4000; ++i) {
    const double x = i * 0.01;
    const T xt = static_cast<T>(x);
    const long double half_ulp =
        0.5L * (std::nextafter(xt, std::numeric_limits<T>::infinity()) - xt);
    if (std::exp(-static_cast<long double>(xt)) < half_ulp) return x;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

TEST(NaiveBreakdown, SinglePrecisionKnee) {
  const auto found = find_naive_breakdown(Precision::Single);
  ASSERT_TRUE(found.has_value());
  EXPECT_GE(*found, 13.0);
  EXPECT_LE(*found, 18.0);
  EXPECT_NEAR(*found, predicted_breakdown<float>(), 0.1);

  // Past the knee the gap never comes back.
  for (int i = static_cast<int>(std::lround(*found * 100)); i <= 4000; ++i) {
    const float x = static_cast<float>(i * 0.01);
    ASSERT_EQ(softplus_naive(x) - x, 0.0f) << x;
  }
  // Just before it, it still exists.
  const float before = static_cast<float>(*found - 0.01);
  EXPECT_NE(softplus_naive(before) - before, 0.0f);

  EXPECT_TRUE(check_breakdown().passed);
}

TEST(NaiveBreakdown, DoublePrecisionKneeIsFarLater) {
  const auto found = find_naive_breakdown(Precision::Double);
  ASSERT_TRUE(found.has_value());
  EXPECT_NEAR(*found, predicted_breakdown<double>(), 0.02);
  EXPECT_GT(*found, 33.0);
  EXPECT_LT(*found, 34.0);
}

TEST(SlowTail, Examples) {
  EXPECT_TRUE(check_slow_tail(kBSoftplusMatch, 10.0).passed);
  EXPECT_TRUE(check_slow_tail(kBSoftplusMatch, 2.0).passed);
  EXPECT_TRUE(check_slow_tail(4.0, -10.0).passed);
  EXPECT_NEAR(squareplus_d1(-10.0, 4.0), 0.0097096621545399202, 1e-16);
  EXPECT_NEAR(unchecked::sigmoid(-10.0), 4.5397868702434395e-05, 1e-19);
}

TEST(SlowTail, SlopeClaimNeedsLargeNegativeInputsAtMatchingB) {
  // With b = 4 ln^2 2 the slope of squareplus only overtakes the sigmoid
  // below x ~ -3.07.
  EXPECT_FALSE(check_slow_tail(kBSoftplusMatch, -2.0).passed);
  EXPECT_TRUE(check_slow_tail(kBSoftplusMatch, -3.1).passed);
}

TEST(SlowTail, Preconditions) {
  EXPECT_THROW(check_slow_tail(1.0, 10.0), DomainError);
  EXPECT_THROW(check_slow_tail(4.0, 1.5), DomainError);
}

TEST(VerifyReport, PassedMatchesTolerance) {
  EXPECT_TRUE(VerifyReport::make("a", 0, std::nullopt, 1e-12, 1e-12).passed);
  EXPECT_FALSE(VerifyReport::make("a", 0, std::nullopt, 2e-12, 1e-12).passed);
  const auto line = format_report_line(VerifyReport::make("c", 1.5, 4.0, 0.0, 1.0));
  EXPECT_EQ(line, "PASS c worst_x=1.5 worst_b=4 worst_error=0 tolerance=1");
}

TEST(Registry, CoversEveryClaim) {
  std::set<std::string> covered;
  std::set<std::string> names;
  for (const auto& c : registry()) {
    EXPECT_TRUE(names.insert(c.name).second) << "duplicate " << c.name;
    covered.insert(c.claims.begin(), c.claims.end());
  }
  for (const auto& claim : required_claims()) {
    EXPECT_TRUE(covered.count(claim)) << "no check covers " << claim;
  }
}

TEST(Registry, AllPassesAndIsTheConjunction) {
  const std::string all[] = {"all"};
  const auto reports = run_checks(all);
  EXPECT_FALSE(reports.empty());
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed) << format_report_line(r);
    EXPECT_EQ(r.passed, r.worst_error <= r.tolerance);
  }
}

TEST(Registry, UnknownNameAndOverrides) {
  const std::string bad[] = {"bogus"};
  EXPECT_THROW(run_checks(bad), UsageError);
  const std::string bound[] = {"bound"};
  CheckOptions opt;
  opt.b = 1.0;
  const auto r = run_checks(bound, opt);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].passed);
}

}  // namespace
}  // namespace sqp::verify
