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

#include <complex>
#include <cstdint>
#include <vector>

#include "zerolab/geometry.hpp"

namespace zerolab {

struct KernelContext {
  int degree = 0;
  int dim_m = 0;
  double diag_value = 0.0;  // Pi_N(z, z) = binom(N+m, m) m! / pi^m
};

KernelContext make_kernel_context(int N, int m);

// P_N(z, w) = |<Z, W>|^N.
double normalized_kernel(const KernelContext& ctx, const ProjectivePoint& z, const ProjectivePoint& w);
// log P_N, accurate when P_N is tiny or close to 1.
double log_normalized_kernel(const KernelContext& ctx, const ProjectivePoint& z, const ProjectivePoint& w);

// max of P_N(z, w) N^{b^2/2} over random pairs at distance b sqrt(log N / N).
double far_decay_report(const KernelContext& ctx, double b, int n_pairs, std::uint64_t seed = 1);

// R_N(u, v) with P_N(z0 + u/sqrt N, z0 + v/sqrt N) = exp(-|u-v|^2/2) (1 + R_N).
double near_remainder(const KernelContext& ctx, const ProjectivePoint& z0, const std::vector<cplx>& u,
                      const std::vector<cplx>& v);

struct RemainderReport {
  double max_ratio = 0.0;  // max |R_N| / (|u - v|^2 N^{-1/2 + eps})
  double max_abs = 0.0;
  int samples = 0;
};

// Samples u = 0 and |v| <= v_max at random base points and directions.
RemainderReport remainder_report(const KernelContext& ctx, double v_max, int n_samples, double eps = 0.1,
                                 std::uint64_t seed = 1);

}  // namespace zerolab
