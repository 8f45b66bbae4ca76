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
#include <cstddef>
#include <vector>

namespace zerolab {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b]. Rules on [-1, 1] are cached.
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Composite Gauss-Legendre on consecutive panels [edges[i], edges[i+1]].
Rule1D composite_gauss(const std::vector<double>& edges, int points_per_panel);

// Panel edges on [a, b] shrinking geometrically toward a by `ratio`.
std::vector<double> graded_edges(double a, double b, int panels, double ratio);

// Log-spaced panel edges on [a, b], a > 0.
std::vector<double> log_edges(double a, double b, int panels);

// Rule on the standard m-simplex {p_j >= 0, sum p_j <= 1} built as a
// collapsed (Duffy) product of Gauss-Legendre rules. Nodes are stored row
// major with m coordinates each. Weights sum to 1/m!.
struct SimplexRule {
  int dim = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
};

SimplexRule simplex_rule(int dim, int n);

// Rule on the unit sphere S^{2m-1} of C^m: u_j = sqrt(t_j) e^{i a_j} with t
// on the (m-1)-simplex and uniform phases, using d sigma = 2^{1-m} dt da.
// Exact for polynomials in u, conj(u) of low enough degree.
struct SphereRule {
  int m = 0;
  std::vector<std::array<std::complex<double>, 3>> u;
  std::vector<double> w;
};

SphereRule sphere_rule(int m, int n_simplex, int n_phase);

// Fixed-order pairwise summation; result does not depend on thread layout.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace zerolab
