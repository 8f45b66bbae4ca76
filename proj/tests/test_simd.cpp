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
#include <cstdlib>
#include <random>

#include "zerolab/simd/kernels.hpp"

using namespace zerolab::simd;

namespace {

std::vector<double> randv(std::size_t n, std::mt19937_64& g, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = d(g);
  return v;
}

void expect_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol * (1 + std::abs(a[i]))) << i;
}

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!isa_available(Isa::avx2)) GTEST_SKIP() << "AVX2 not available on this machine";
    v = avx2_kernels();
  }
  const KernelTable& s = scalar_kernels();
  const KernelTable* v = nullptr;
  std::mt19937_64 g{42};
};

}  // namespace

TEST_F(SimdEquivalence, PolyEval) {
  for (std::size_t n : {1u, 3u, 4u, 17u, 64u}) {
    const int deg = 23;
    auto cre = randv(deg + 1, g), cim = randv(deg + 1, g), xr = randv(n, g), xi = randv(n, g);
    std::vector<double> a(n), b(n), c(n), d(n);
    s.poly_eval(cre.data(), cim.data(), deg, xr.data(), xi.data(), n, a.data(), b.data());
    v->poly_eval(cre.data(), cim.data(), deg, xr.data(), xi.data(), n, c.data(), d.data());
    expect_close(a, c, 1e-13);
    expect_close(b, d, 1e-13);
  }
}

TEST_F(SimdEquivalence, PolyEvalDeriv) {
  const std::size_t n = 37;
  const int deg = 40;
  auto cre = randv(deg + 1, g), cim = randv(deg + 1, g), xr = randv(n, g), xi = randv(n, g);
  std::vector<double> p1(n), p2(n), d1(n), d2(n), q1(n), q2(n), e1(n), e2(n);
  s.poly_eval_deriv(cre.data(), cim.data(), deg, xr.data(), xi.data(), n, p1.data(), p2.data(), d1.data(), d2.data());
  v->poly_eval_deriv(cre.data(), cim.data(), deg, xr.data(), xi.data(), n, q1.data(), q2.data(), e1.data(), e2.data());
  expect_close(p1, q1, 1e-13);
  expect_close(p2, q2, 1e-13);
  expect_close(d1, e1, 1e-12);
  expect_close(d2, e2, 1e-12);
}

TEST_F(SimdEquivalence, HornerStep) {
  const std::size_t n = 29;
  auto ar = randv(n, g), ai = randv(n, g), xr = randv(n, g), xi = randv(n, g), br = randv(n, g), bi = randv(n, g);
  auto cr = ar, ci = ai;
  s.horner_step(ar.data(), ai.data(), xr.data(), xi.data(), br.data(), bi.data(), n);
  v->horner_step(cr.data(), ci.data(), xr.data(), xi.data(), br.data(), bi.data(), n);
  expect_close(ar, cr, 1e-15);
  expect_close(ai, ci, 1e-15);
}

TEST_F(SimdEquivalence, AberthSums) {
  const std::size_t n = 45;
  auto zr = randv(n, g, 3.0), zi = randv(n, g, 3.0);
  std::vector<unsigned char> active(n, 1);
  for (std::size_t i = 0; i < n; i += 4) active[i] = 0;
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  s.aberth_sums(zr.data(), zi.data(), n, active.data(), a.data(), b.data());
  v->aberth_sums(zr.data(), zi.data(), n, active.data(), c.data(), d.data());
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    EXPECT_NEAR(a[i], c[i], 1e-11 * (1 + std::abs(a[i])));
    EXPECT_NEAR(b[i], d[i], 1e-11 * (1 + std::abs(b[i])));
  }
}

TEST_F(SimdEquivalence, OverlapSq) {
  for (int m = 1; m <= 3; ++m) {
    const std::size_t n = 53;
    auto zr = randv(m + 1, g), zi = randv(m + 1, g);
    std::vector<std::vector<double>> wr, wi;
    std::vector<const double*> pr, pi;
    for (int k = 0; k <= m; ++k) {
      wr.push_back(randv(n, g));
      wi.push_back(randv(n, g));
    }
    for (int k = 0; k <= m; ++k) {
      pr.push_back(wr[k].data());
      pi.push_back(wi[k].data());
    }
    std::vector<double> a(n), b(n);
    s.overlap_sq(m, zr.data(), zi.data(), pr.data(), pi.data(), n, a.data());
    v->overlap_sq(m, zr.data(), zi.data(), pr.data(), pi.data(), n, b.data());
    expect_close(a, b, 1e-14);
  }
}

TEST(SimdDispatch, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::scalar));
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  EXPECT_FALSE(available_isas().empty());
}

TEST(SimdDispatch, OverrideSelectsTable) {
  const Isa before = active_isa();
  set_active_isa(Isa::scalar);
  EXPECT_EQ(&kernels(), &scalar_kernels());
  if (isa_available(Isa::avx2)) {
    set_active_isa(Isa::avx2);
    EXPECT_EQ(&kernels(), avx2_kernels());
  }
  set_active_isa(before);
}

TEST(SimdDispatch, ScalarKernelsMatchDirectFormula) {
  // p(x) = 1 + 2x + 3x^2 at x = i: 1 - 3 + 2i.
  const double cre[] = {1, 2, 3}, cim[] = {0, 0, 0}, xr[] = {0}, xi[] = {1};
  double o_re, o_im;
  scalar_kernels().poly_eval(cre, cim, 2, xr, xi, 1, &o_re, &o_im);
  EXPECT_DOUBLE_EQ(o_re, -2.0);
  EXPECT_DOUBLE_EQ(o_im, 2.0);
}
