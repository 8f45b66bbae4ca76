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
#include <vector>

#include "zerolab/ensemble.hpp"
#include "zerolab/geometry.hpp"

namespace zerolab {

struct ZeroSet {
  std::vector<ProjectivePoint> roots;
  std::vector<int> multiplicity;
  double residual = 0.0;  // max relative backward error over roots
  int sweeps = 0;
  int total_multiplicity() const;
};

struct RootOptions {
  int max_sweeps = 100;
  double backward_tol = 1e-10;
  double merge_distance = 1e-8;
};

// Roots of p(z) = sum_k a_k z^k on CP^1 (z = Z_1 / Z_0). Exact zero leading
// or trailing coefficients become roots at 0 or at infinity.
ZeroSet find_polynomial_roots(const std::vector<cplx>& a, const RootOptions& opt = {});

// Zeros of an m = 1 section.
ZeroSet find_roots(const Section& s, const RootOptions& opt = {});

// Chart coefficients a_k = c_k w_k of an m = 1 section.
std::vector<cplx> section_polynomial(const Section& s);

}  // namespace zerolab
