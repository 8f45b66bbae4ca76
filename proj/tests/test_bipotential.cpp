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

#include "oracles/finite_difference.hpp"
#include "oracles/series.hpp"
#include "zerolab/bipotential.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/geometry.hpp"
#include "zerolab/rng.hpp"

using namespace zerolab;

namespace {

constexpr double kPi = std::numbers::pi;

double dz_dv_coefficient(double vre, double vim) {
  const FormElement f = var_infty({cplx(vre, vim)});
  return extract_coefficient(f, 1, 1, true).real();
}

}  // namespace

TEST(Bipotential, DilogAgainstSeriesOracle) {
  for (double x : {0.0, 1e-8, 0.1, 0.3, 0.5, 0.51, 0.7, 0.9, 0.99, 0.999999, 1.0})
    EXPECT_NEAR(dilog(x), oracle::li2(x), 1e-14) << x;
  EXPECT_NEAR(dilog(0.5), kPi * kPi / 12 - 0.5 * std::log(2.0) * std::log(2.0), 1e-15);
}

TEST(Bipotential, GtildeValues) {
  EXPECT_EQ(gtilde(0.0), 0.0);
  EXPECT_NEAR(gtilde(1.0), 1.0 / 24.0, 1e-16);
  EXPECT_THROW(gtilde(1.1), DomainError);
  EXPECT_THROW(gtilde(-0.1), DomainError);
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = gtilde(i / 100.0);
    EXPECT_GE(v, 0.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
  const double t = 0.5, h = 1e-5;
  const double fd = (gtilde(t + h) - gtilde(t - h)) / (2 * h);
  EXPECT_NEAR(fd, -std::log(1 - t * t) / (2 * kPi * kPi * t), 1e-8);
}

TEST(Bipotential, FValues) {
  EXPECT_NEAR(F_derivs(0.0, 0), 1.0 / 24.0, 1e-16);
  EXPECT_LT(F_derivs(20.0, 0), 1e-16);
  EXPECT_NEAR(F_derivs(0.5, 2), 1.0 / (kPi * kPi * (std::exp(1.0) - 1.0)), 1e-15);
  EXPECT_NEAR(F_derivs(0.5, 2), 0.05897, 1e-5);
  for (double l : {0.01, 0.3, 1.0, 4.0}) EXPECT_NEAR(F_derivs(l, 0), oracle::F(l), 1e-15);
  EXPECT_THROW(F_derivs(0.0, 2), SingularArgument);
  EXPECT_THROW(F_derivs(-1.0, 3), SingularArgument);
}

TEST(Bipotential, DerivativeChainIsConsistent) {
  for (int k = 0; k < 4; ++k)
    for (double l = 0.1; l <= 5.0; l += 0.35) {
      const double h = 1e-4 * l;
      const double fd = (F_derivs(l + h, k) - F_derivs(l - h, k)) / (2 * h);
      const double ex = F_derivs(l, k + 1);
      EXPECT_NEAR(fd / ex, 1.0, 1e-6) << "order " << k << " lambda " << l;
    }
}

TEST(Bipotential, QnExamples) {
  const KernelContext ctx = make_kernel_context(100, 1);
  const ProjectivePoint z({1.0, 0.0}), w({1.0, cplx(0.2, 0.1)});
  EXPECT_NEAR(q_n(ctx, z, z), 1.0 / 24.0, 1e-16);
  EXPECT_EQ(q_n(ctx, z, w), q_n(ctx, w, z));
  EXPECT_NEAR(q_n(ctx, z, w), gtilde(normalized_kernel(ctx, z, w)), 1e-15);
  // Far pairs: Q_N <= G~(N^{-9/2}).
  const double d = 3.0 * std::sqrt(std::log(100.0) / 100.0);
  const ProjectivePoint far({1.0, std::tan(d)});
  EXPECT_LE(q_n(ctx, z, far), gtilde(std::pow(100.0, -4.5)) * (1 + 1e-12));
}

TEST(Bipotential, QnDecreasesWithDistance) {
  const KernelContext ctx = make_kernel_context(40, 1);
  const ProjectivePoint o({1.0, 0.0});
  double prev = 1.0;
  for (double t = 0.0; t < 1.5; t += 0.01) {
    const double q = q_n(ctx, o, ProjectivePoint({1.0, std::tan(t)}));
    EXPECT_LE(q, prev);
    prev = q;
  }
}

TEST(Bipotential, QnNearDiagonalConvergesToLimit) {
  const ProjectivePoint o({1.0, 0.0});
  double prev = 1.0;
  for (int N : {100, 1000, 10000}) {
    const KernelContext ctx = make_kernel_context(N, 1);
    const ProjectivePoint w({1.0, 1.0 / std::sqrt(N)});
    const double gap = std::abs(q_n(ctx, o, w) - gtilde(std::exp(-0.5)));
    EXPECT_LT(gap, prev * 0.5);
    prev = gap;
  }
}

TEST(Bipotential, VarInftyMatchesFiniteDifferenceOracle) {
  // Coefficient of dz dzbar dv dvbar at m = 1 against -d^4/du du* dv dv* of
  // F(|u - v|^2 / 2) at u = 0, with F from the series oracle.
  auto f = [](double ur, double ui, double vr, double vi) {
    const double s = (ur - vr) * (ur - vr) + (ui - vi) * (ui - vi);
    return oracle::F(0.5 * s);
  };
  for (auto [vr, vi] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.6, -0.5}, {1.7, 0.4}}) {
    const double fd = -oracle::mixed_fourth(f, {0.0, 0.0, vr, vi}, 1e-2);
    const double got = dz_dv_coefficient(vr, vi);
    EXPECT_NEAR(got / fd, 1.0, 1e-4) << vr << "," << vi;
  }
}

TEST(Bipotential, VarInftyTailAndSingularity) {
  const FormElement f = var_infty({6.0});
  for (const auto& [x, c] : f.terms()) EXPECT_LT(std::abs(c), 1e-10);
  EXPECT_THROW(var_infty({0.0, 0.0}), SingularArgument);
}

TEST(Bipotential, VarInftyBidegree) {
  const FormElement f = var_infty({cplx(0.3, 0.2), cplx(-0.5, 0.9)});
  for (const auto& [x, c] : f.terms()) {
    EXPECT_EQ(std::popcount(family_subset(x, Gen::dz)), 1);
    EXPECT_EQ(std::popcount(family_subset(x, Gen::dzbar)), 1);
    EXPECT_EQ(std::popcount(family_subset(x, Gen::dv)), 1);
    EXPECT_EQ(std::popcount(family_subset(x, Gen::dvbar)), 1);
  }
}

TEST(Bipotential, VarInftyDzPartIsHermitian) {
  // Pairing with the dv-top form leaves a (1,1)-form in dz; with the real
  // normalization i dz_j ^ dzbar_k it must be Hermitian.
  RngStream r(61, 0);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 2;
    std::vector<cplx> v(m);
    for (auto& c : v) c = r.complex_normal();
    const FormElement f = wedge(var_infty(v), wedge_power(pairing_forms(std::vector<cplx>(m, 0.0)).dv_dvbar, m - 1));
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const cplx a = extract_coefficient(f, 1u << j, 1u << k, true);
        const cplx b = extract_coefficient(f, 1u << k, 1u << j, true);
        EXPECT_LT(std::abs(a - std::conj(b)), 1e-12 * (1 + std::abs(a)));
      }
  }
}

TEST(Bipotential, VarInftyUnitaryEquivariance) {
  // For unitary g on C^m acting on both z and v, Var_inf(g v) = g_* Var_inf(v).
  // Check through the invariant contraction with the dz dzbar and dv dvbar Kahler forms.
  RngStream r(62, 0);
  const int m = 3;
  std::vector<cplx> v(m);
  for (auto& c : v) c = r.complex_normal();
  std::vector<cplx> g(m * m);
  {
    std::vector<cplx> big = random_unitary(m - 1, [&] { return r.normal(); });
    g = big;
  }
  std::vector<cplx> gv(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gv[i] += g[i * m + j] * v[j];
  const auto P = pairing_forms(std::vector<cplx>(m, 0.0));
  auto contract = [&](const std::vector<cplx>& x) {
    const FormElement f = wedge(wedge(var_infty(x), wedge_power(P.dz_dzbar, m - 1)), wedge_power(P.dv_dvbar, m - 1));
    return extract_coefficient(f, (1u << m) - 1, (1u << m) - 1, true);
  };
  EXPECT_LT(std::abs(contract(v) - contract(gv)), 1e-12 * std::abs(contract(v)));
  // Coefficientwise: the dzbar-dv pairing block transforms as g^T C conj(g).
  auto block = [&](const std::vector<cplx>& x) {
    const FormElement f = var_infty(x);
    std::vector<cplx> c(m * m * m * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) {
            const Mono mono = static_cast<Mono>(gen_bit(Gen::dz, a) | gen_bit(Gen::dzbar, b) | gen_bit(Gen::dv, p) |
                                                gen_bit(Gen::dvbar, q));
            c[((a * m + b) * m + p) * m + q] = f.coeff(mono);
          }
    return c;
  };
  const auto c0 = block(v), c1 = block(gv);
  // Pullback: dz -> g dz, dzbar -> conj(g) dzbar, same for dv.
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
          cplx s = 0.0;
          for (int a2 = 0; a2 < m; ++a2)
            for (int b2 = 0; b2 < m; ++b2)
              for (int p2 = 0; p2 < m; ++p2)
                for (int q2 = 0; q2 < m; ++q2)
                  s += c1[((a2 * m + b2) * m + p2) * m + q2] * g[a2 * m + a] * std::conj(g[b2 * m + b]) *
                       g[p2 * m + p] * std::conj(g[q2 * m + q]);
          worst = std::max(worst, std::abs(s - c0[((a * m + b) * m + p) * m + q]));
        }
  EXPECT_LT(worst, 1e-12);
}

TEST(Bipotential, ScaledFourthDerivativeApproachesVarInfty) {
  // -d^4 Q_N / du du* dv dv* at z0 + u/sqrt(N), z0 + v/sqrt(N) in affine
  // coordinates of CP^1 against the Var_inf coefficient at |v| = 1.
  const double target = dz_dv_coefficient(1.0, 0.0);
  double prev = 1.0;
  for (int N : {1000, 10000}) {
    const KernelContext ctx = make_kernel_context(N, 1);
    const double s = 1.0 / std::sqrt(static_cast<double>(N));
    auto f = [&](double ur, double ui, double vr, double vi) {
      return q_n(ctx, ProjectivePoint({1.0, cplx(ur, ui) * s}), ProjectivePoint({1.0, cplx(vr, vi) * s}));
    };
    const double fd = -oracle::mixed_fourth(f, {0.0, 0.0, 1.0, 0.0}, 1e-2);
    const double rel = std::abs(fd / target - 1.0);
    EXPECT_LT(rel, 5.0 * std::pow(N, -0.4));
    EXPECT_LT(rel, prev);
    prev = rel;
  }
}

TEST(Bipotential, EmpiricalConstantIsStableInN) {
  const auto a = bipotential_constant_report(make_kernel_context(100, 1), 40, 3);
  const auto b = bipotential_constant_report(make_kernel_context(400, 1), 40, 3);
  EXPECT_EQ(a.pairs, 40);
  EXPECT_GT(a.constant, 0.0);
  EXPECT_LT(b.constant, 2.0 * a.constant);
  EXPECT_GT(b.constant, 0.5 * a.constant);
  const auto c = bipotential_constant_report(make_kernel_context(20, 2), 10, 3);
  EXPECT_TRUE(std::isfinite(c.constant) && c.constant > 0.0);
}
