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
#include <cstdint>
#include <string>
#include <vector>

#include "zerolab/geometry.hpp"
#include "zerolab/kernel.hpp"
#include "zerolab/test_forms.hpp"

namespace zerolab {

struct SampleMeta {
  int N = 0;
  int m = 0;
  std::string phi_id;
  std::string route;
};

struct SampleSet {
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  SampleMeta meta;
  int discarded = 0;
};

struct Estimate {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  double stderr_variance = 0.0;  // jackknife
  std::size_t n = 0;
};

Estimate mc_estimate(const SampleSet& samples);
Estimate mc_estimate(const std::vector<double>& values);

struct NormalityReport {
  double ks_distance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

NormalityReport normality_test(const SampleSet& samples);
NormalityReport normality_test(const std::vector<double>& values);

double normal_cdf(double x);
// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LeadingConstants {
  // m = 1: coefficient of ||Delta phi||^2 in N Var; otherwise equal to kappa_m.
  double smooth_constant = 0.0;
  double nu_m1 = 0.0;
  double kappa_m = 0.0;  // pi^{m-2} zeta(m+2) / 4
};

LeadingConstants leading_constants(int m, int k = 1);

// Integral of G~(exp(-|v|^2/2)) over C^m against the Euclidean volume,
// by radial quadrature.
double universal_integral(int m);
// The same integral with G~ truncated after n_terms series terms.
double universal_integral_truncated(int m, int n_terms);

// ---- bipotential variance quadrature ----

struct VarianceQuadOptions {
  int outer_resolution = 32;
  int radial_panels = 6;
  int radial_points = 16;
  int angular_points = 16;  // per phase (m = 1: points on the circle)
  double radius_factor = 0.0;  // 0 selects sqrt(m + 4)
  double suspect_tolerance = 1e-6;  // relative change under refinement
  bool refine = true;
  int threads = 1;
};

struct VarianceQuadResult {
  double value = 0.0;
  double near = 0.0;
  double far = 0.0;
  double refined_value = 0.0;
  double radius = 0.0;
  bool suspect = false;
};

VarianceQuadResult variance_quadrature(const KernelContext& ctx, const TestForm& phi,
                                       const VarianceQuadOptions& opt = {});
VarianceQuadResult variance_quadrature(const KernelContext& ctx, const TestForm& phi, const QuadratureGrid& grid,
                                       const VarianceQuadOptions& opt = {});

// Leading-order prediction: smooth_constant ||Delta phi||^2 / N for m = 1.
double smooth_variance_limit(const TestForm& phi, int N);

// ---- universal Hermitian forms ----

struct HermitianFormMatrix {
  int m = 0;
  int k = 0;
  std::vector<std::pair<unsigned, unsigned>> basis;  // (J, K) bit masks
  std::vector<std::complex<double>> entries;         // row major, size basis^2
  std::vector<double> eigenvalues;                   // ascending
  double refinement_change = 0.0;
  std::size_t size() const { return basis.size(); }
  std::complex<double> at(std::size_t r, std::size_t c) const { return entries[r * basis.size() + c]; }
  double frobenius_norm() const;
  double hermitian_defect() const;  // ||B - B^H||_F
};

struct BmkOptions {
  int radial_panels = 40;
  int radial_points = 5;  // 200 nodes by default
  double r_min = 1e-4;
  double r_max = 8.0;
  double tolerance = 1e-4;
};

HermitianFormMatrix bmk_form(int m, int k, const BmkOptions& opt = {});
std::string bmk_basis_label(const HermitianFormMatrix& b, std::size_t i);

}  // namespace zerolab
