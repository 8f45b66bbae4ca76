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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zerolab/analysis.hpp"
#include "zerolab/bipotential.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/parallel.hpp"
#include "zerolab/quadrature.hpp"
#include "zerolab/simd/kernels.hpp"

namespace zerolab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFarLambdaCut = 40.0;

struct NearRule {
  Rule1D radial;            // nodes r, weights include Q_N(r) J(r)
  SphereRule sphere;
};

NearRule near_rule(int N, int m, double R, int panels, int points, int angular) {
  NearRule nr;
  const Rule1D base = composite_gauss(graded_edges(0.0, R, panels, 0.45), points);
  nr.radial = base;
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    const double r = base.nodes[i];
    const double s = std::sin(r), c = std::cos(r);
    const double jac = std::pow(s, 2 * m - 1) * c;
    nr.radial.weights[i] = base.weights[i] * jac * q_n_from_wedge(N, s * s);
  }
  nr.sphere = sphere_rule(m, angular, angular);
  return nr;
}

double near_field(const NearRule& nr, const NormalFrame& frame, const TestForm& phi) {
  std::vector<double> acc(nr.radial.nodes.size());
  for (std::size_t i = 0; i < nr.radial.nodes.size(); ++i) {
    const double r = nr.radial.nodes[i];
    double s = 0.0;
    for (std::size_t a = 0; a < nr.sphere.u.size(); ++a)
      s += nr.sphere.w[a] * phi.psi(frame.geodesic(r, nr.sphere.u[a].data()));
    acc[i] = nr.radial.weights[i] * s;
  }
  return pairwise_sum(acc);
}

}  // namespace

VarianceQuadResult variance_quadrature(const KernelContext& ctx, const TestForm& phi, const QuadratureGrid& grid,
                                       const VarianceQuadOptions& opt) {
  const int m = ctx.dim_m, N = ctx.degree;
  if (m != phi.dim_m || m != grid.m) throw DomainError("dimension mismatch in variance_quadrature");
  if (m > 2) throw UnsupportedDimension("variance_quadrature supports m = 1, 2");
  const double c = opt.radius_factor > 0.0 ? opt.radius_factor : std::sqrt(m + 4.0);
  const double R = std::min(c * std::sqrt(std::log(static_cast<double>(N)) / N), 0.45 * kPi);

  const NearRule coarse = near_rule(N, m, R, opt.radial_panels, opt.radial_points, opt.angular_points);
  NearRule fine;
  if (opt.refine)
    fine = near_rule(N, m, R, 2 * opt.radial_panels, opt.radial_points, opt.angular_points + opt.angular_points / 2);

  const std::size_t n = grid.size();
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = phi.psi(grid.nodes[i]);

  // Structure-of-arrays copy of the grid for the far-field overlap kernel.
  std::array<std::vector<double>, kMaxDim + 1> wre, wim;
  for (int k = 0; k <= m; ++k) {
    wre[k].resize(n);
    wim[k].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      wre[k][j] = grid.nodes[j][k].real();
      wim[k][j] = grid.nodes[j][k].imag();
    }
  }
  const double cos2R = std::cos(R) * std::cos(R);

  std::vector<double> near(n, 0.0), near_fine(n, 0.0), far(n, 0.0);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    if (psi[i] == 0.0) return;
    const NormalFrame frame(grid.nodes[i]);
    near[i] = grid.weights[i] * psi[i] * near_field(coarse, frame, phi);
    if (opt.refine) near_fine[i] = grid.weights[i] * psi[i] * near_field(fine, frame, phi);

    std::array<double, kMaxDim + 1> zr{}, zi{};
    std::array<const double*, kMaxDim + 1> pr{}, pi{};
    for (int k = 0; k <= m; ++k) {
      zr[k] = grid.nodes[i][k].real();
      zi[k] = grid.nodes[i][k].imag();
      pr[k] = wre[k].data();
      pi[k] = wim[k].data();
    }
    std::vector<double> ov(n), terms(n, 0.0);
    simd::kernels().overlap_sq(m, zr.data(), zi.data(), pr.data(), pi.data(), n, ov.data());
    for (std::size_t j = 0; j < n; ++j) {
      if (ov[j] > cos2R || psi[j] == 0.0) continue;
      const double lambda = -0.5 * N * std::log(ov[j]);
      if (lambda > kFarLambdaCut) continue;
      terms[j] = grid.weights[j] * psi[j] * F_derivs(lambda, 0);
    }
    far[i] = grid.weights[i] * psi[i] * pairwise_sum(terms);
  });

  VarianceQuadResult res;
  res.radius = R;
  res.near = pairwise_sum(near);
  res.far = pairwise_sum(far);
  res.value = res.near + res.far;
  res.refined_value = opt.refine ? pairwise_sum(near_fine) + res.far : res.value;
  const double scale = std::max(std::abs(res.value), 1e-300);
  res.suspect = opt.refine && std::abs(res.refined_value - res.value) > opt.suspect_tolerance * scale;
  return res;
}

VarianceQuadResult variance_quadrature(const KernelContext& ctx, const TestForm& phi, const VarianceQuadOptions& opt) {
  if (ctx.dim_m > 2) throw UnsupportedDimension("variance_quadrature supports m = 1, 2");
  const QuadratureGrid g = build_grid(ctx.dim_m, opt.outer_resolution, GridKind::product_gauss);
  return variance_quadrature(ctx, phi, g, opt);
}

}  // namespace zerolab
