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

#include "zerolab/bipotential.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zerolab/errors.hpp"
#include "zerolab/rng.hpp"

namespace zerolab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// B_{2k} / (2k+1)! for k = 1..10.
constexpr double kBernoulli[] = {
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    (5.0 / 66.0) / 39916800.0,
    (-691.0 / 2730.0) / 6227020800.0,
    (7.0 / 6.0) / 1307674368000.0,
    (-3617.0 / 510.0) / 355687428096000.0,
    (43867.0 / 798.0) / 121645100408832000.0,
    (-174611.0 / 330.0) / 51090942171709440000.0,
};

// Li_2(1 - e^{-u}) = sum_n B_n u^{n+1} / (n+1)!, valid for u <= log 2.
double dilog_series(double u) {
  const double u2 = u * u;
  double s = 0.0, p = u * u2;
  for (double b : kBernoulli) {
    s += b * p;
    p *= u2;
  }
  return u - 0.25 * u2 + s;
}

}  // namespace

double dilog(double x, double one_minus_x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("dilog argument outside [0, 1]");
  const double omx = one_minus_x >= 0.0 ? one_minus_x : 1.0 - x;
  if (x <= 0.5) return dilog_series(-std::log1p(-x));
  if (omx == 0.0) return kPi2 / 6.0;
  return kPi2 / 6.0 - std::log(x) * std::log(omx) - dilog_series(-std::log(x));
}

double gtilde(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("gtilde argument outside [0, 1]");
  return dilog(t * t, (1.0 - t) * (1.0 + t)) / (4.0 * kPi2);
}

double F_derivs(double lambda, int order) {
  if (order < 0 || order > 4) throw DomainError("F_derivs order must be 0..4");
  if (std::isnan(lambda)) throw DomainError("F_derivs argument is NaN");
  if (order >= 1 && lambda <= 0.0) throw SingularArgument("F derivatives are singular at lambda <= 0");
  if (order == 0 && lambda < 0.0) throw DomainError("F is defined for lambda >= 0");
  switch (order) {
    case 0: {
      if (std::isinf(lambda)) return 0.0;
      const double x = std::exp(-2.0 * lambda);
      return dilog(x, -std::expm1(-2.0 * lambda)) / (4.0 * kPi2);
    }
    case 1:
      return std::log(-std::expm1(-2.0 * lambda)) / (2.0 * kPi2);
    case 2:
      return 1.0 / (kPi2 * std::expm1(2.0 * lambda));
    case 3: {
      const double cs = 1.0 / std::sinh(lambda);
      return -cs * cs / (2.0 * kPi2);
    }
    default: {
      const double cs = 1.0 / std::sinh(lambda);
      return cs * cs / (std::tanh(lambda) * kPi2);
    }
  }
}

double q_n_from_wedge(int N, double wedge_sq) {
  if (wedge_sq <= 0.0) return 1.0 / 24.0;
  if (wedge_sq >= 1.0) return 0.0;
  const double lambda = -0.5 * N * std::log1p(-wedge_sq);
  return F_derivs(lambda, 0);
}

double q_n(const KernelContext& ctx, const ProjectivePoint& z, const ProjectivePoint& w) {
  return q_n_from_wedge(ctx.degree, wedge_norm_sq(z, w));
}

VarInftyParts var_infty_parts(const std::vector<cplx>& v) {
  const PairingForms p = pairing_forms(v);
  VarInftyParts r;
  const FormElement vv = wedge(p.vbar_dv, p.v_dvbar);
  const FormElement zz = wedge(p.vbar_dz, p.v_dzbar);
  r.t4 = wedge(zz, vv);
  r.t2 = wedge(p.dz_dzbar, vv) + wedge(wedge(p.v_dzbar, p.vbar_dv), p.dz_dvbar) +
         wedge(wedge(p.vbar_dz, p.dzbar_dv), p.v_dvbar) + wedge(zz, p.dv_dvbar);
  r.t0 = wedge(p.dzbar_dv, p.dz_dvbar) + wedge(p.dz_dzbar, p.dv_dvbar);
  return r;
}

void var_infty_coefficients(double v_norm_sq, double& a, double& b, double& c) {
  const double lambda = 0.5 * v_norm_sq;
  a = -F_derivs(lambda, 4) / 16.0;
  b = -F_derivs(lambda, 3) / 8.0;
  c = -F_derivs(lambda, 2) / 4.0;
}

FormElement var_infty(const std::vector<cplx>& v) {
  double n2 = 0.0;
  for (const cplx& c : v) n2 += std::norm(c);
  if (std::sqrt(n2) < 1e-8) throw SingularArgument("var_infty is singular at v = 0");
  double a, b, c;
  var_infty_coefficients(n2, a, b, c);
  const VarInftyParts p = var_infty_parts(v);
  return p.t4 * a + p.t2 * b + p.t0 * c;
}

namespace {

// d/du_a d/dubar_a d/dv_c d/dvbar_c of Q_N(fz(u), fw(v)) at u = v = 0 as
// Laplacian_a Laplacian_c / 16, Richardson-extrapolated from steps h and h/2.
double mixed_component(const KernelContext& ctx, const NormalFrame& fz, const NormalFrame& fw, int a, int c,
                       double h) {
  const int m = ctx.dim_m;
  auto stencil = [&](double s) {
    const double off[3] = {-s, 0.0, s}, wt[3] = {1.0, -2.0, 1.0};
    const cplx dirs[2] = {1.0, cplx(0.0, 1.0)};
    double acc = 0.0;
    for (const cplx& du : dirs)
      for (const cplx& dv : dirs)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            std::vector<cplx> u(m, 0.0), v(m, 0.0);
            u[a] = off[i] * du;
            v[c] = off[j] * dv;
            acc += wt[i] * wt[j] * q_n(ctx, fz(u), fw(v));
          }
    return acc / (16.0 * s * s * s * s);
  };
  return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

}  // namespace

BipotentialConstantReport bipotential_constant_report(const KernelContext& ctx, int n_pairs, std::uint64_t seed) {
  const int m = ctx.dim_m, N = ctx.degree;
  BipotentialConstantReport rep;
  const double d_min = 1.0 / std::sqrt(static_cast<double>(N)), d_max = 1.2;
  for (int p = 0; p < n_pairs; ++p) {
    RngStream rng(seed, p);
    std::vector<cplx> h(m + 1), dir(m);
    for (cplx& x : h) x = rng.complex_normal();
    const ProjectivePoint z(h);
    double nrm = 0.0;
    for (cplx& x : dir) {
      x = rng.complex_normal();
      nrm += std::norm(x);
    }
    for (cplx& x : dir) x /= std::sqrt(nrm);
    const double d = d_min * std::pow(d_max / d_min, rng.uniform());
    const NormalFrame fz(z);
    const NormalFrame fw(fz.geodesic(d, dir.data()));
    const double step = 0.02 * std::min(d, d_min);
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < m; ++c) {
        const double val = std::abs(mixed_component(ctx, fz, fw, a, c, step)) * d * d / N;
        if (val > rep.constant) {
          rep.constant = val;
          rep.at_distance = d;
        }
      }
    ++rep.pairs;
  }
  return rep;
}

}  // namespace zerolab

