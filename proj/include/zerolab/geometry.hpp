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

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace zerolab {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 3;

// A point of CP^m stored as a unit homogeneous vector (Z_0, ..., Z_m).
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  // Normalizes `homog`; throws DomainError on the zero vector or m outside [1, 3].
  explicit ProjectivePoint(const std::vector<cplx>& homog);
  static ProjectivePoint from_unit(int m, const cplx* unit_homog);

  int dim() const { return m_; }
  const cplx& operator[](int i) const { return z_[i]; }
  const cplx* data() const { return z_.data(); }
  std::vector<cplx> homog() const { return {z_.begin(), z_.begin() + m_ + 1}; }
  // Index of the homogeneous coordinate of largest modulus.
  int max_chart() const;
  // |<Z, W>| == 1 within tol.
  bool same_point(const ProjectivePoint& w, double tol = 1e-12) const;

 private:
  int m_ = 0;
  std::array<cplx, kMaxDim + 1> z_{};
};

struct ChartCoords {
  int chart_index = 0;
  std::vector<cplx> affine;
};

struct QuadratureGrid {
  int m = 0;
  int resolution = 0;
  std::uint64_t seed = 0;
  std::vector<ProjectivePoint> nodes;
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
};

enum class GridKind { product_gauss, jittered_qmc };

struct CapRegion {
  CapRegion(const ProjectivePoint& center, double radius);
  ProjectivePoint center;
  double radius;
  bool contains(const ProjectivePoint& z) const;
};

// <Z, W> = sum Z_i conj(W_i).
cplx hermitian_inner(const ProjectivePoint& z, const ProjectivePoint& w);

// |Z ^ W|^2 = 1 - |<Z, W>|^2 computed without cancellation.
double wedge_norm_sq(const ProjectivePoint& z, const ProjectivePoint& w);

double fs_distance(const ProjectivePoint& z, const ProjectivePoint& w);

double fs_volume(int m);

ChartCoords to_chart(const ProjectivePoint& z, int chart_index);
ProjectivePoint from_chart(int m, const ChartCoords& c);

// Unitary frame (Z_0, E_1, ..., E_m) with first column z0.
std::array<std::array<cplx, kMaxDim + 1>, kMaxDim + 1> unitary_frame(const ProjectivePoint& z0);

// Holomorphic normal coordinates at z0: v -> [z0 + sum v_j E_j].
class NormalFrame {
 public:
  explicit NormalFrame(const ProjectivePoint& z0);
  ProjectivePoint operator()(const cplx* v) const;
  ProjectivePoint operator()(const std::vector<cplx>& v) const { return (*this)(v.data()); }
  // Point at geodesic distance r along the unit direction u.
  ProjectivePoint geodesic(double r, const cplx* u) const;
  const ProjectivePoint& base() const { return z0_; }

 private:
  ProjectivePoint z0_;
  std::array<std::array<cplx, kMaxDim + 1>, kMaxDim + 1> e_{};
};

NormalFrame normal_frame(const ProjectivePoint& z0);

QuadratureGrid build_grid(int m, int resolution, GridKind kind, std::uint64_t seed = 0);

double cap_boundary_length(const CapRegion& U);
double cap_area(const CapRegion& U);

// m = 1 sphere embedding (cos theta, x, y) with x + iy = 2 conj(Z_0) Z_1.
std::array<double, 3> sphere_embedding(const ProjectivePoint& z);
ProjectivePoint from_sphere(double cos_theta, double azimuth);

// Moment coordinates p_j = |Z_j|^2, j = 0..m.
std::array<double, kMaxDim + 1> moments(const ProjectivePoint& z);

// Haar-distributed unitary of size (m+1) driven by a standard normal source.
std::vector<cplx> random_unitary(int m, const std::function<double()>& normal);
ProjectivePoint apply_unitary(const std::vector<cplx>& g, const ProjectivePoint& z);

}  // namespace zerolab
