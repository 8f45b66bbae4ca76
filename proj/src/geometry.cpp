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

#include "zerolab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zerolab/errors.hpp"
#include "zerolab/quadrature.hpp"
#include "zerolab/rng.hpp"

namespace zerolab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kChartThreshold = 1e-14;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

ProjectivePoint::ProjectivePoint(const std::vector<cplx>& homog) {
  const int m = static_cast<int>(homog.size()) - 1;
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("projective dimension must be 1..3");
  double nrm = 0.0;
  for (const cplx& c : homog) nrm += std::norm(c);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw DomainError("zero or non-finite homogeneous vector");
  nrm = std::sqrt(nrm);
  m_ = m;
  for (int i = 0; i <= m; ++i) z_[i] = homog[i] / nrm;
}

ProjectivePoint ProjectivePoint::from_unit(int m, const cplx* unit_homog) {
  ProjectivePoint p;
  p.m_ = m;
  for (int i = 0; i <= m; ++i) p.z_[i] = unit_homog[i];
  return p;
}

int ProjectivePoint::max_chart() const {
  int best = 0;
  for (int i = 1; i <= m_; ++i)
    if (std::norm(z_[i]) > std::norm(z_[best])) best = i;
  return best;
}

bool ProjectivePoint::same_point(const ProjectivePoint& w, double tol) const {
  return m_ == w.m_ && std::sqrt(wedge_norm_sq(*this, w)) <= tol;
}

cplx hermitian_inner(const ProjectivePoint& z, const ProjectivePoint& w) {
  cplx s = 0.0;
  for (int i = 0; i <= z.dim(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

double wedge_norm_sq(const ProjectivePoint& z, const ProjectivePoint& w) {
  double s = 0.0;
  for (int i = 0; i <= z.dim(); ++i)
    for (int j = i + 1; j <= z.dim(); ++j)
      s += std::norm(z[i] * w[j] - z[j] * w[i]);
  return s;
}

double fs_distance(const ProjectivePoint& z, const ProjectivePoint& w) {
  return std::atan2(std::sqrt(wedge_norm_sq(z, w)), std::abs(hermitian_inner(z, w)));
}

double fs_volume(int m) { return std::pow(kPi, m) / factorial(m); }

ChartCoords to_chart(const ProjectivePoint& z, int chart_index) {
  if (chart_index < 0 || chart_index > z.dim()) throw DomainError("chart index out of range");
  const cplx c = z[chart_index];
  if (std::abs(c) <= kChartThreshold) throw ChartSingular("chart component vanishes");
  ChartCoords out;
  out.chart_index = chart_index;
  for (int i = 0; i <= z.dim(); ++i)
    if (i != chart_index) out.affine.push_back(z[i] / c);
  return out;
}

ProjectivePoint from_chart(int m, const ChartCoords& c) {
  if (static_cast<int>(c.affine.size()) != m) throw DomainError("affine coordinate count mismatch");
  std::vector<cplx> h(m + 1);
  int k = 0;
  for (int i = 0; i <= m; ++i) h[i] = (i == c.chart_index) ? cplx(1.0) : c.affine[k++];
  return ProjectivePoint(h);
}

std::array<std::array<cplx, kMaxDim + 1>, kMaxDim + 1> unitary_frame(const ProjectivePoint& z0) {
  const int m = z0.dim();
  std::array<std::array<cplx, kMaxDim + 1>, kMaxDim + 1> e{};
  for (int i = 0; i <= m; ++i) e[0][i] = z0[i];
  const int skip = z0.max_chart();
  int col = 1;
  for (int k = 0; k <= m; ++k) {
    if (k == skip) continue;
    std::array<cplx, kMaxDim + 1> v{};
    v[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < col; ++j) {
        cplx d = 0.0;
        for (int i = 0; i <= m; ++i) d += std::conj(e[j][i]) * v[i];
        for (int i = 0; i <= m; ++i) v[i] -= d * e[j][i];
      }
    }
    double n = 0.0;
    for (int i = 0; i <= m; ++i) n += std::norm(v[i]);
    n = std::sqrt(n);
    for (int i = 0; i <= m; ++i) e[col][i] = v[i] / n;
    ++col;
  }
  return e;
}

NormalFrame::NormalFrame(const ProjectivePoint& z0) : z0_(z0), e_(unitary_frame(z0)) {}

ProjectivePoint NormalFrame::operator()(const cplx* v) const {
  const int m = z0_.dim();
  std::array<cplx, kMaxDim + 1> h{};
  double n = 1.0;
  for (int j = 0; j < m; ++j) n += std::norm(v[j]);
  const double s = 1.0 / std::sqrt(n);
  for (int i = 0; i <= m; ++i) {
    cplx acc = e_[0][i];
    for (int j = 0; j < m; ++j) acc += v[j] * e_[j + 1][i];
    h[i] = acc * s;
  }
  return ProjectivePoint::from_unit(m, h.data());
}

ProjectivePoint NormalFrame::geodesic(double r, const cplx* u) const {
  const int m = z0_.dim();
  const double c = std::cos(r), s = std::sin(r);
  std::array<cplx, kMaxDim + 1> h{};
  for (int i = 0; i <= m; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j) acc += u[j] * e_[j + 1][i];
    h[i] = c * e_[0][i] + s * acc;
  }
  return ProjectivePoint::from_unit(m, h.data());
}

NormalFrame normal_frame(const ProjectivePoint& z0) { return NormalFrame(z0); }

namespace {

ProjectivePoint moment_point(int m, const double* p, const double* alpha) {
  std::array<cplx, kMaxDim + 1> h{};
  double p0 = 1.0;
  for (int j = 0; j < m; ++j) p0 -= p[j];
  h[0] = std::sqrt(std::max(p0, 0.0));
  for (int j = 0; j < m; ++j) h[j + 1] = std::polar(std::sqrt(std::max(p[j], 0.0)), alpha[j]);
  double n = 0.0;
  for (int i = 0; i <= m; ++i) n += std::norm(h[i]);
  n = std::sqrt(n);
  for (int i = 0; i <= m; ++i) h[i] /= n;
  return ProjectivePoint::from_unit(m, h.data());
}

void product_grid(QuadratureGrid& g) {
  const int m = g.m, n = g.resolution, na = 2 * n;
  const SimplexRule s = simplex_rule(m, n);
  const double phase_w = std::pow(2.0 * kPi / na, m) * std::pow(0.5, m);
  std::size_t nphase = 1;
  for (int j = 0; j < m; ++j) nphase *= na;
  g.nodes.reserve(s.size() * nphase);
  g.weights.reserve(s.size() * nphase);
  std::array<double, kMaxDim> alpha{};
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < nphase; ++k) {
      std::size_t r = k;
      for (int j = 0; j < m; ++j) {
        alpha[j] = 2.0 * kPi * static_cast<double>(r % na) / na;
        r /= na;
      }
      g.nodes.push_back(moment_point(m, &s.nodes[i * m], alpha.data()));
      g.weights.push_back(s.weights[i] * phase_w);
    }
  }
}

void jittered_grid(QuadratureGrid& g) {
  const int m = g.m, n = g.resolution, na = 2 * n;
  RngStream rng(g.seed, 0x6a17u);
  std::size_t ncell = 1, nphase = 1;
  for (int j = 0; j < m; ++j) {
    ncell *= n;
    nphase *= na;
  }
  const double w = fs_volume(m) / static_cast<double>(ncell * nphase);
  std::array<double, kMaxDim + 1> x{}, p{};
  std::array<double, kMaxDim> alpha{};
  for (std::size_t c = 0; c < ncell; ++c) {
    for (std::size_t k = 0; k < nphase; ++k) {
      std::size_t r = c;
      for (int j = 0; j < m; ++j) {
        x[j] = (static_cast<double>(r % n) + rng.uniform()) / n;
        r /= n;
      }
      // Sorted uniforms have uniformly distributed spacings on the simplex.
      std::sort(x.begin(), x.begin() + m);
      double prev = 0.0;
      for (int j = 0; j < m; ++j) {
        p[j] = x[j] - prev;
        prev = x[j];
      }
      r = k;
      for (int j = 0; j < m; ++j) {
        alpha[j] = 2.0 * kPi * (static_cast<double>(r % na) + rng.uniform()) / na;
        r /= na;
      }
      g.nodes.push_back(moment_point(m, p.data(), alpha.data()));
      g.weights.push_back(w);
    }
  }
}

}  // namespace

QuadratureGrid build_grid(int m, int resolution, GridKind kind, std::uint64_t seed) {
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("build_grid supports m = 1, 2, 3");
  if (resolution < 4) throw DomainError("grid resolution must be at least 4");
  QuadratureGrid g;
  g.m = m;
  g.resolution = resolution;
  g.seed = seed;
  if (kind == GridKind::product_gauss)
    product_grid(g);
  else
    jittered_grid(g);
  return g;
}

CapRegion::CapRegion(const ProjectivePoint& c, double r) : center(c), radius(r) {
  if (!(r > 0.0 && r < kPi / 2)) throw DomainError("cap radius must lie in (0, pi/2)");
}

bool CapRegion::contains(const ProjectivePoint& z) const { return fs_distance(center, z) < radius; }

double cap_boundary_length(const CapRegion& U) {
  if (U.center.dim() != 1) throw UnsupportedDimension("cap boundary length is defined for m = 1");
  return kPi * std::sin(2.0 * U.radius);
}

double cap_area(const CapRegion& U) {
  if (U.center.dim() != 1) throw UnsupportedDimension("cap area is defined for m = 1");
  const double s = std::sin(U.radius);
  return kPi * s * s;
}

std::array<double, 3> sphere_embedding(const ProjectivePoint& z) {
  const cplx xy = 2.0 * std::conj(z[0]) * z[1];
  return {std::norm(z[0]) - std::norm(z[1]), xy.real(), xy.imag()};
}

ProjectivePoint from_sphere(double cos_theta, double azimuth) {
  const double c = std::clamp(cos_theta, -1.0, 1.0);
  std::array<cplx, 2> h{cplx(std::sqrt(0.5 * (1.0 + c))), std::polar(std::sqrt(0.5 * (1.0 - c)), azimuth)};
  return ProjectivePoint(std::vector<cplx>(h.begin(), h.end()));
}

std::array<double, kMaxDim + 1> moments(const ProjectivePoint& z) {
  std::array<double, kMaxDim + 1> p{};
  for (int i = 0; i <= z.dim(); ++i) p[i] = std::norm(z[i]);
  return p;
}

std::vector<cplx> random_unitary(int m, const std::function<double()>& normal) {
  const int n = m + 1;
  std::vector<cplx> g(n * n);
  for (auto& c : g) c = cplx(normal(), normal());
  // Gram-Schmidt on rows gives a Haar unitary (positive diagonal of R).
  for (int r = 0; r < n; ++r) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int q = 0; q < r; ++q) {
        cplx d = 0.0;
        for (int i = 0; i < n; ++i) d += std::conj(g[q * n + i]) * g[r * n + i];
        for (int i = 0; i < n; ++i) g[r * n + i] -= d * g[q * n + i];
      }
    }
    double nr = 0.0;
    for (int i = 0; i < n; ++i) nr += std::norm(g[r * n + i]);
    nr = std::sqrt(nr);
    for (int i = 0; i < n; ++i) g[r * n + i] /= nr;
  }
  return g;
}

ProjectivePoint apply_unitary(const std::vector<cplx>& g, const ProjectivePoint& z) {
  const int n = z.dim() + 1;
  std::array<cplx, kMaxDim + 1> h{};
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += g[i * n + j] * z[j];
    h[i] = acc;
  }
  return ProjectivePoint::from_unit(z.dim(), h.data());
}

}  // namespace zerolab
