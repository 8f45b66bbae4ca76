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

#pragma once

#include <vector>

#include "zerolab/forms.hpp"
#include "zerolab/geometry.hpp"
#include "zerolab/kernel.hpp"

namespace zerolab {

// Li_2(x) on [0, 1]. `one_minus_x` may carry 1 - x to full relative accuracy;
// pass a negative value to have it computed.
double dilog(double x, double one_minus_x = -1.0);

// G~(t) = sum_{n>=1} t^{2n} / n^2 = Li_2(t^2) / (4 pi^2).
double gtilde(double t);

// F(lambda) = G~(exp(-lambda)) and its derivatives up to order 4.
double F_derivs(double lambda, int order);

// Q_N(z, w) = G~(P_N(z, w)).
double q_n(const KernelContext& ctx, const ProjectivePoint& z, const ProjectivePoint& w);
// Q_N as a function of 1 - |<Z, W>|^2, the quantity used in quadrature loops.
double q_n_from_wedge(int N, double wedge_sq);

// The three invariant building blocks of Var_inf(v); the limit density is
// A T4 + B T2 + C T0 with A = -F''''/16, B = -F'''/8, C = -F''/4 at |v|^2/2.
struct VarInftyParts {
  FormElement t4, t2, t0;
};

VarInftyParts var_infty_parts(const std::vector<cplx>& v);
void var_infty_coefficients(double v_norm_sq, double& a, double& b, double& c);
FormElement var_infty(const std::vector<cplx>& v);

// Empirical constant in |d_z dbar_z d_w dbar_w Q_N| <= C N / d(z, w)^2: the
// largest value of |D| d^2 / N over random pairs with 1/sqrt(N) <= d <= 1.2,
// where D runs over the diagonal components in orthonormal coordinates.
struct BipotentialConstantReport {
  double constant = 0.0;
  double at_distance = 0.0;  // separation attaining the maximum
  int pairs = 0;
};
BipotentialConstantReport bipotential_constant_report(const KernelContext& ctx, int n_pairs, std::uint64_t seed = 1);

}  // namespace zerolab
