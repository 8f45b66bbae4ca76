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

#include <cstddef>
#include <string>
#include <vector>

// Hot loops in structure-of-arrays layout: complex values are passed as
// separate real and imaginary arrays. Every kernel has a scalar reference
// implementation; vector variants must agree with it to rounding.
namespace zerolab::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  // out[i] = sum_{k=0}^{deg} c_k x_i^k
  void (*poly_eval)(const double* cre, const double* cim, int deg, const double* xre,
                    const double* xim, std::size_t n, double* ore, double* oim);
  // p(x_i) and p'(x_i)
  void (*poly_eval_deriv)(const double* cre, const double* cim, int deg, const double* xre,
                          const double* xim, std::size_t n, double* pre, double* pim,
                          double* dre, double* dim);
  // acc_i = acc_i * x_i + b_i
  void (*horner_step)(double* are, double* aim, const double* xre, const double* xim,
                      const double* bre, const double* bim, std::size_t n);
  // s_i = sum_{j != i} 1 / (z_i - z_j), for every i with active[i] != 0
  void (*aberth_sums)(const double* zre, const double* zim, std::size_t n,
                      const unsigned char* active, double* sre, double* sim);
  // out_j = |sum_i z_i conj(w_ij)|^2 with w given per coordinate i = 0..m
  void (*overlap_sq)(int m, const double* zre, const double* zim, const double* const* wre,
                     const double* const* wim, std::size_t n, double* out);
};

const KernelTable& scalar_kernels();
// Null when the variant was not compiled in.
const KernelTable* avx2_kernels();

bool isa_available(Isa isa);
// Selected once from CPU features; ZEROLAB_SIMD=scalar|avx2 overrides.
Isa active_isa();
void set_active_isa(Isa isa);
const KernelTable& kernels();
std::string isa_name(Isa isa);
std::vector<Isa> available_isas();

}  // namespace zerolab::simd
