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

#include <immintrin.h>

#include "zerolab/simd/kernels.hpp"

namespace zerolab::simd {

namespace {

inline void cmul_add(__m256d& ar, __m256d& ai, __m256d xr, __m256d xi, __m256d br, __m256d bi) {
  const __m256d tr = _mm256_fmsub_pd(ar, xr, _mm256_fmsub_pd(ai, xi, br));
  ai = _mm256_fmadd_pd(ar, xi, _mm256_fmadd_pd(ai, xr, bi));
  ar = tr;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void poly_eval(const double* cre, const double* cim, int deg, const double* xre, const double* xim,
               std::size_t n, double* ore, double* oim) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xr = _mm256_loadu_pd(xre + i), xi = _mm256_loadu_pd(xim + i);
    __m256d ar = _mm256_set1_pd(cre[deg]), ai = _mm256_set1_pd(cim[deg]);
    for (int k = deg - 1; k >= 0; --k)
      cmul_add(ar, ai, xr, xi, _mm256_set1_pd(cre[k]), _mm256_set1_pd(cim[k]));
    _mm256_storeu_pd(ore + i, ar);
    _mm256_storeu_pd(oim + i, ai);
  }
  if (i < n) scalar_kernels().poly_eval(cre, cim, deg, xre + i, xim + i, n - i, ore + i, oim + i);
}

void poly_eval_deriv(const double* cre, const double* cim, int deg, const double* xre,
                     const double* xim, std::size_t n, double* pre, double* pim, double* dre,
                     double* dim) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xr = _mm256_loadu_pd(xre + i), xi = _mm256_loadu_pd(xim + i);
    __m256d ar = _mm256_set1_pd(cre[deg]), ai = _mm256_set1_pd(cim[deg]);
    __m256d br = _mm256_setzero_pd(), bi = _mm256_setzero_pd();
    for (int k = deg - 1; k >= 0; --k) {
      cmul_add(br, bi, xr, xi, ar, ai);
      cmul_add(ar, ai, xr, xi, _mm256_set1_pd(cre[k]), _mm256_set1_pd(cim[k]));
    }
    _mm256_storeu_pd(pre + i, ar);
    _mm256_storeu_pd(pim + i, ai);
    _mm256_storeu_pd(dre + i, br);
    _mm256_storeu_pd(dim + i, bi);
  }
  if (i < n)
    scalar_kernels().poly_eval_deriv(cre, cim, deg, xre + i, xim + i, n - i, pre + i, pim + i,
                                     dre + i, dim + i);
}

void horner_step(double* are, double* aim, const double* xre, const double* xim, const double* bre,
                 const double* bim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ar = _mm256_loadu_pd(are + i), ai = _mm256_loadu_pd(aim + i);
    cmul_add(ar, ai, _mm256_loadu_pd(xre + i), _mm256_loadu_pd(xim + i), _mm256_loadu_pd(bre + i),
             _mm256_loadu_pd(bim + i));
    _mm256_storeu_pd(are + i, ar);
    _mm256_storeu_pd(aim + i, ai);
  }
  if (i < n) scalar_kernels().horner_step(are + i, aim + i, xre + i, xim + i, bre + i, bim + i, n - i);
}

inline void accumulate_inverse(__m256d zr, __m256d zi, const double* wre, const double* wim,
                               __m256d& sr, __m256d& si) {
  const __m256d dr = _mm256_sub_pd(zr, _mm256_loadu_pd(wre));
  const __m256d di = _mm256_sub_pd(zi, _mm256_loadu_pd(wim));
  const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
  sr = _mm256_fmadd_pd(dr, inv, sr);
  si = _mm256_fnmadd_pd(di, inv, si);
}

void aberth_sums(const double* zre, const double* zim, std::size_t n, const unsigned char* active,
                 double* sre, double* sim) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    const __m256d zr = _mm256_set1_pd(zre[i]), zi = _mm256_set1_pd(zim[i]);
    __m256d vr = _mm256_setzero_pd(), vi = _mm256_setzero_pd();
    double tr = 0.0, ti = 0.0;
    auto tail = [&](std::size_t j) {
      const double dr = zre[i] - zre[j], di = zim[i] - zim[j];
      const double inv = 1.0 / (dr * dr + di * di);
      tr += dr * inv;
      ti -= di * inv;
    };
    std::size_t j = 0;
    for (; j + 4 <= i; j += 4) accumulate_inverse(zr, zi, zre + j, zim + j, vr, vi);
    for (; j < i; ++j) tail(j);
    j = i + 1;
    for (; j + 4 <= n; j += 4) accumulate_inverse(zr, zi, zre + j, zim + j, vr, vi);
    for (; j < n; ++j) tail(j);
    sre[i] = hsum(vr) + tr;
    sim[i] = hsum(vi) + ti;
  }
}

void overlap_sq(int m, const double* zre, const double* zim, const double* const* wre,
                const double* const* wim, std::size_t n, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
    for (int i = 0; i <= m; ++i) {
      const __m256d wr = _mm256_loadu_pd(wre[i] + j), wi = _mm256_loadu_pd(wim[i] + j);
      const __m256d zr = _mm256_set1_pd(zre[i]), zi = _mm256_set1_pd(zim[i]);
      sr = _mm256_fmadd_pd(zr, wr, _mm256_fmadd_pd(zi, wi, sr));
      si = _mm256_fmadd_pd(zi, wr, _mm256_fnmadd_pd(zr, wi, si));
    }
    _mm256_storeu_pd(out + j, _mm256_fmadd_pd(sr, sr, _mm256_mul_pd(si, si)));
  }
  if (j < n) {
    const double* wr[4];
    const double* wi[4];
    for (int i = 0; i <= m; ++i) {
      wr[i] = wre[i] + j;
      wi[i] = wim[i] + j;
    }
    scalar_kernels().overlap_sq(m, zre, zim, wr, wi, n - j, out + j);
  }
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable t{poly_eval, poly_eval_deriv, horner_step, aberth_sums, overlap_sq};
  return &t;
}

}  // namespace zerolab::simd
