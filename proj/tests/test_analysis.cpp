// Copyright 2026 The zerolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/funk_hecke.hpp"
#include "zerolab/analysis.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/kernel.hpp"
#include "zerolab/rng.hpp"
#include "zerolab/test_forms.hpp"

using namespace zerolab;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> normals(std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (double& x : v) x = d(g);
  return v;
}

}  // namespace

TEST(McEstimate, ConstantSample) {
  const Estimate e = mc_estimate(std::vector<double>(20, 3.5));
  EXPECT_EQ(e.mean, 3.5);
  EXPECT_EQ(e.variance, 0.0);
  EXPECT_EQ(e.stderr_variance, 0.0);
  EXPECT_THROW(mc_estimate(std::vector<double>(7, 1.0)), TooFewSamples);
}

TEST(McEstimate, SmallExample) {
  const Estimate e = mc_estimate(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_DOUBLE_EQ(e.mean, 4.5);
  EXPECT_DOUBLE_EQ(e.variance, 6.0);
  EXPECT_DOUBLE_EQ(e.stderr_mean, std::sqrt(6.0 / 8));
}

TEST(McEstimate, JackknifeMatchesExplicitLeaveOneOut) {
  const auto x = normals(60, 1);
  const Estimate e = mc_estimate(x);
  std::vector<double> loo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> y = x;
    y.erase(y.begin() + i);
    double mu = 0, s = 0;
    for (double v : y) mu += v;
    mu /= y.size();
    for (double v : y) s += (v - mu) * (v - mu);
    loo.push_back(s / (y.size() - 1));
  }
  double lbar = 0, s = 0;
  for (double v : loo) lbar += v;
  lbar /= loo.size();
  for (double v : loo) s += (v - lbar) * (v - lbar);
  EXPECT_NEAR(e.stderr_variance, std::sqrt((x.size() - 1.0) / x.size() * s), 1e-12);
}

TEST(McEstimate, StandardErrorsAreCalibrated) {
  // For N(0,1) samples of size n, sd(variance) = sqrt(2/(n-1)).
  const std::size_t n = 4000;
  const Estimate e = mc_estimate(normals(n, 2));
  EXPECT_NEAR(e.stderr_mean, 1 / std::sqrt(double(n)), 0.05 / std::sqrt(double(n)));
  EXPECT_NEAR(e.stderr_variance, std::sqrt(2.0 / (n - 1)), 0.15 * std::sqrt(2.0 / (n - 1)));
  EXPECT_NEAR(e.variance, 1.0, 4 * e.stderr_variance);
}

TEST(Normality, AcceptsNormalRejectsExponential) {
  const NormalityReport a = normality_test(normals(2000, 3));
  EXPECT_LT(a.ks_distance, 0.03);
  EXPECT_LT(std::abs(a.skewness), 0.15);
  EXPECT_LT(std::abs(a.excess_kurtosis), 0.3);

  std::mt19937_64 g(4);
  std::exponential_distribution<double> d;
  std::vector<double> x(2000);
  for (double& v : x) v = d(g);
  const NormalityReport b = normality_test(x);
  EXPECT_GT(b.ks_distance, 0.06);
  EXPECT_NEAR(b.skewness, 2.0, 0.4);
  EXPECT_THROW(normality_test(std::vector<double>(50, 0.0)), TooFewSamples);
}

TEST(Normality, TwoSampleKs) {
  EXPECT_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_EQ(ks_two_sample({1, 2}, {3, 4}), 1.0);
  EXPECT_NEAR(ks_two_sample({1, 3}, {2, 4}), 0.5, 1e-15);
}

TEST(Constants, ClosedForms) {
  EXPECT_NEAR(leading_constants(1).kappa_m, boost::math::zeta(3.0) / (4 * kPi), 1e-15);
  EXPECT_NEAR(leading_constants(1).kappa_m, 0.0956566, 1e-7);
  EXPECT_NEAR(leading_constants(1).smooth_constant, boost::math::zeta(3.0) / (16 * kPi), 1e-15);
  EXPECT_NEAR(leading_constants(1).smooth_constant, 0.0239142, 1e-7);
  EXPECT_NEAR(leading_constants(1).nu_m1, boost::math::zeta(1.5) / (8 * std::pow(kPi, 1.5)), 1e-15);
  EXPECT_THROW(leading_constants(4), UnsupportedDimension);
  EXPECT_THROW(leading_constants(2, 2), DomainError);
}

TEST(Constants, UniversalIntegralMatchesZetaSeries) {
  for (int m = 1; m <= 3; ++m) {
    double series = 0.0;
    for (int n = 1; n <= 200000; ++n) series += std::pow(kPi, m) / std::pow(double(n), m + 2);
    series /= 4 * kPi * kPi;
    EXPECT_NEAR(universal_integral(m), series, 1e-10 * series) << m;
    EXPECT_NEAR(universal_integral(m), leading_constants(m).kappa_m, 1e-10 * series) << m;
    EXPECT_NEAR(universal_integral_truncated(m, 5000), series, 1e-7 * series) << m;
  }
}

TEST(VarianceQuad, ConstantFormHasZeroVariance) {
  const auto r = variance_quadrature(make_kernel_context(50, 1), make_test_form(1, "constant", {{"value", 2}}));
  EXPECT_EQ(r.value, 0.0);
}

TEST(VarianceQuad, QuadraticInPhi) {
  const KernelContext ctx = make_kernel_context(60, 1);
  const TestForm f = make_test_form(1, "tesseral", {{"ell", 2}, {"k", 1}});
  const double v1 = variance_quadrature(ctx, f).value;
  const double v3 = variance_quadrature(ctx, combine(3.0, f, 0.0, f)).value;
  EXPECT_NEAR(v3, 9 * v1, 1e-10 * v3);
}

TEST(VarianceQuad, MatchesFunkHeckeOracle) {
  for (int l : {1, 2, 3}) {
    for (int N : {20, 100, 400}) {
      const auto r = variance_quadrature(make_kernel_context(N, 1), make_test_form(1, "zonal", {{"ell", double(l)}}));
      const double o = oracle::zonal_variance(N, l);
      EXPECT_NEAR(r.value, o, 1e-6 * o) << "l=" << l << " N=" << N;
      EXPECT_FALSE(r.suspect);
    }
  }
}

TEST(VarianceQuad, ApproachesSmoothLimit) {
  const TestForm f = make_test_form(1, "zonal", {{"ell", 1}});
  double prev = 1.0;
  for (int N : {100, 400, 1600}) {
    const double ratio = variance_quadrature(make_kernel_context(N, 1), f).value / smooth_variance_limit(f, N);
    EXPECT_LT(std::abs(ratio - 1), prev);
    prev = std::abs(ratio - 1);
  }
  EXPECT_LT(prev, 0.01);
}

TEST(VarianceQuad, UnitaryInvarianceOnCP2) {
  RngStream r(5, 0);
  const TestForm f = make_test_form(2, "power_sum", {{"degree", 2}});
  const TestForm g = compose_unitary(f, random_unitary(2, [&] { return r.normal(); }));
  VarianceQuadOptions opt;
  opt.outer_resolution = 4;
  opt.angular_points = 6;
  opt.refine = false;
  const KernelContext ctx = make_kernel_context(12, 2);
  const double a = variance_quadrature(ctx, f, opt).value, b = variance_quadrature(ctx, g, opt).value;
  EXPECT_NEAR(a, b, 1e-3 * a);
}

TEST(VarianceQuad, RejectsMismatch) {
  EXPECT_THROW(variance_quadrature(make_kernel_context(10, 2), make_test_form(1, "zonal", {{"ell", 1}})), DomainError);
  EXPECT_THROW(variance_quadrature(make_kernel_context(10, 3), make_test_form(3, "product")), UnsupportedDimension);
}
