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

#include "zerolab/simd/kernels.hpp"

namespace zerolab::simd {

namespace {

void poly_eval(const double* cre, const double* cim, int deg, const double* xre, const double* xim,
               std::size_t n, double* ore, double* oim) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xre[i], xi = xim[i];
    double ar = cre[deg], ai = cim[deg];
    for (int k = deg - 1; k >= 0; --k) {
      const double t = ar * xr - ai * xi + cre[k];
      ai = ar * xi + ai * xr + cim[k];
      ar = t;
    }
    ore[i] = ar;
    oim[i] = ai;
  }
}

void poly_eval_deriv(const double* cre, const double* cim, int deg, const double* xre,
                     const double* xim, std::size_t n, double* pre, double* pim, double* dre,
                     double* dim) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xre[i], xi = xim[i];
    double ar = cre[deg], ai = cim[deg], br = 0.0, bi = 0.0;
    for (int k = deg - 1; k >= 0; --k) {
      const double tb = br * xr - bi * xi + ar;
      bi = br * xi + bi * xr + ai;
      br = tb;
      const double t = ar * xr - ai * xi + cre[k];
      ai = ar * xi + ai * xr + cim[k];
      ar = t;
    }
    pre[i] = ar;
    pim[i] = ai;
    dre[i] = br;
    dim[i] = bi;
  }
}

void horner_step(double* are, double* aim, const double* xre, const double* xim, const double* bre,
                 const double* bim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = are[i], ai = aim[i];
    are[i] = ar * xre[i] - ai * xim[i] + bre[i];
    aim[i] = ar * xim[i] + ai * xre[i] + bim[i];
  }
}

void aberth_sums(const double* zre, const double* zim, std::size_t n, const unsigned char* active,
                 double* sre, double* sim) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dr = zre[i] - zre[j], di = zim[i] - zim[j];
      const double inv = 1.0 / (dr * dr + di * di);
      sr += dr * inv;
      si -= di * inv;
    }
    sre[i] = sr;
    sim[i] = si;
  }
}

void overlap_sq(int m, const double* zre, const double* zim, const double* const* wre,
                const double* const* wim, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    double sr = 0.0, si = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double wr = wre[i][j], wi = wim[i][j];
      sr += zre[i] * wr + zim[i] * wi;
      si += zim[i] * wr - zre[i] * wi;
    }
    out[j] = sr * sr + si * si;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable t{poly_eval, poly_eval_deriv, horner_step, aberth_sums, overlap_sq};
  return t;
}

}  // namespace zerolab::simd
