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

#include "zerolab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zerolab/ensemble.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/rng.hpp"

namespace zerolab {

namespace {

ProjectivePoint random_point(int m, RngStream& rng) {
  std::vector<cplx> h(m + 1);
  for (auto& c : h) c = rng.complex_normal();
  return ProjectivePoint(h);
}

std::vector<cplx> random_direction(int m, RngStream& rng) {
  std::vector<cplx> u(m);
  double n = 0.0;
  for (auto& c : u) {
    c = rng.complex_normal();
    n += std::norm(c);
  }
  for (auto& c : u) c /= std::sqrt(n);
  return u;
}

}  // namespace

KernelContext make_kernel_context(int N, int m) {
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("m must be 1, 2 or 3");
  if (N < 1) throw DomainError("degree must be positive");
  KernelContext c;
  c.degree = N;
  c.dim_m = m;
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  c.diag_value = static_cast<double>(section_dimension(N, m)) * f / std::pow(std::numbers::pi, m);
  return c;
}

double log_normalized_kernel(const KernelContext& ctx, const ProjectivePoint& z, const ProjectivePoint& w) {
  const double s2 = std::min(wedge_norm_sq(z, w), 1.0);
  return 0.5 * ctx.degree * std::log1p(-s2);
}

double normalized_kernel(const KernelContext& ctx, const ProjectivePoint& z, const ProjectivePoint& w) {
  return std::exp(log_normalized_kernel(ctx, z, w));
}

double far_decay_report(const KernelContext& ctx, double b, int n_pairs, std::uint64_t seed) {
  const double N = ctx.degree;
  const double d = b * std::sqrt(std::log(N) / N);
  if (d >= std::numbers::pi / 2) throw DomainError("separation exceeds the diameter");
  RngStream rng(seed, 0xfa7);
  double worst = 0.0;
  for (int i = 0; i < n_pairs; ++i) {
    const ProjectivePoint z = random_point(ctx.dim_m, rng);
    const std::vector<cplx> u = random_direction(ctx.dim_m, rng);
    const ProjectivePoint w = normal_frame(z).geodesic(d, u.data());
    const double lr = log_normalized_kernel(ctx, z, w) + 0.5 * b * b * std::log(N);
    worst = std::max(worst, std::exp(lr));
  }
  return worst;
}

double near_remainder(const KernelContext& ctx, const ProjectivePoint& z0, const std::vector<cplx>& u,
                      const std::vector<cplx>& v) {
  const int m = z0.dim();
  if (static_cast<int>(u.size()) != m || static_cast<int>(v.size()) != m)
    throw DomainError("offset dimension mismatch");
  const double s = 1.0 / std::sqrt(static_cast<double>(ctx.degree));
  std::vector<cplx> us(m), vs(m);
  double duv = 0.0;
  for (int j = 0; j < m; ++j) {
    us[j] = u[j] * s;
    vs[j] = v[j] * s;
    duv += std::norm(u[j] - v[j]);
  }
  const NormalFrame f(z0);
  const double lp = log_normalized_kernel(ctx, f(us), f(vs));
  return std::expm1(lp + 0.5 * duv);
}

RemainderReport remainder_report(const KernelContext& ctx, double v_max, int n_samples, double eps,
                                 std::uint64_t seed) {
  RngStream rng(seed, 0x4e4);
  RemainderReport r;
  const int m = ctx.dim_m;
  const double scale = std::pow(static_cast<double>(ctx.degree), -0.5 + eps);
  const std::vector<cplx> zero(m, 0.0);
  for (int i = 0; i < n_samples; ++i) {
    const ProjectivePoint z0 = random_point(m, rng);
    std::vector<cplx> v = random_direction(m, rng);
    const double t = v_max * std::max(rng.uniform(), 1e-3);
    for (auto& c : v) c *= t;
    const double R = near_remainder(ctx, z0, zero, v);
    r.max_abs = std::max(r.max_abs, std::abs(R));
    r.max_ratio = std::max(r.max_ratio, std::abs(R) / (t * t * scale));
    ++r.samples;
  }
  return r;
}

}  // namespace zerolab
