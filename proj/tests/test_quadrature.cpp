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

#include <cmath>
#include <numbers>
#include <random>

#include "zerolab/quadrature.hpp"

using namespace zerolab;

TEST(Quadrature, GaussLegendreIsExactForDegree2nMinus1) {
  for (int n : {1, 3, 8, 20}) {
    const Rule1D r = gauss_legendre(n, 0.0, 2.0);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      EXPECT_NEAR(s, std::pow(2.0, d + 1) / (d + 1), 1e-12 * std::pow(2.0, d + 1));
    }
  }
}

TEST(Quadrature, CompositeGaussOnGradedPanels) {
  const Rule1D r = composite_gauss(graded_edges(0.0, 1.0, 16, 0.4), 6);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::sqrt(r.nodes[i]);
  EXPECT_NEAR(s, 2.0 / 3.0, 1e-8);
  const auto e = graded_edges(0.0, 1.0, 8, 0.4);
  EXPECT_DOUBLE_EQ(e.front(), 0.0);
  EXPECT_DOUBLE_EQ(e.back(), 1.0);
  EXPECT_LT(e[1] - e[0], e[8] - e[7]);
}

TEST(Quadrature, LogEdgesAreGeometric) {
  const auto e = log_edges(1e-4, 8.0, 40);
  ASSERT_EQ(e.size(), 41u);
  EXPECT_NEAR(e[1] / e[0], e[40] / e[39], 1e-10);
}

TEST(Quadrature, SimplexWeightsSumToInverseFactorial) {
  EXPECT_NEAR(pairwise_sum(simplex_rule(1, 7).weights), 1.0, 1e-14);
  EXPECT_NEAR(pairwise_sum(simplex_rule(2, 7).weights), 0.5, 1e-14);
  EXPECT_NEAR(pairwise_sum(simplex_rule(3, 7).weights), 1.0 / 6.0, 1e-14);
  EXPECT_EQ(simplex_rule(0, 5).size(), 1u);
}

TEST(Quadrature, SimplexRuleIntegratesMonomials) {
  // Dirichlet integral: int p1^a p2^b over the 2-simplex = a! b! / (a + b + 2)!.
  const SimplexRule s = simplex_rule(2, 6);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 5; ++b) {
      double q = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i)
        q += s.weights[i] * std::pow(s.nodes[2 * i], a) * std::pow(s.nodes[2 * i + 1], b);
      const double exact = std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
      EXPECT_NEAR(q, exact, 1e-14);
    }
}

TEST(Quadrature, SphereRuleAreaAndMoments) {
  for (int m = 1; m <= 3; ++m) {
    const SphereRule r = sphere_rule(m, 4, 6);
    double area = 0.0, second = 0.0, fourth = 0.0;
    for (std::size_t i = 0; i < r.w.size(); ++i) {
      area += r.w[i];
      second += r.w[i] * std::norm(r.u[i][0]);
      fourth += r.w[i] * std::norm(r.u[i][0]) * std::norm(r.u[i][0]);
    }
    double fact = 1.0;
    for (int k = 2; k < m; ++k) fact *= k;
    const double exact = 2.0 * std::pow(std::numbers::pi, m) / fact;
    EXPECT_NEAR(area, exact, 1e-12);
    // |u_1|^2 averages to 1/m and |u_1|^4 to 2/(m(m+1)).
    EXPECT_NEAR(second / area, 1.0 / m, 1e-12);
    EXPECT_NEAR(fourth / area, 2.0 / (m * (m + 1.0)), 1e-12);
  }
}

TEST(Quadrature, SphereRuleKillsUnbalancedPhases) {
  const SphereRule r = sphere_rule(2, 3, 6);
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < r.w.size(); ++i) s += r.w[i] * r.u[i][0] * r.u[i][0] * std::conj(r.u[i][1]);
  EXPECT_LT(std::abs(s), 1e-14);
}

TEST(Quadrature, PairwiseSumIsAccurate) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(100000);
  long double exact = 0.0L;
  for (double& v : x) {
    v = u(g);
    exact += v;
  }
  EXPECT_NEAR(pairwise_sum(x), static_cast<double>(exact), 1e-10);
  EXPECT_EQ(pairwise_sum(nullptr, 0), 0.0);
}
