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

#include "zerolab/analysis.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zerolab/bipotential.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/quadrature.hpp"

namespace zerolab {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area(int m) {
  // Volume of the unit sphere S^{2m-1} in C^m.
  double f = 1.0;
  for (int k = 2; k < m; ++k) f *= k;
  return 2.0 * std::pow(kPi, m) / f;
}

double radial_integral(int m, const std::function<double(double)>& f_of_lambda) {
  // With lambda = r^2/2, r^{2m-1} dr = (2 lambda)^{m-1} d lambda.
  const Rule1D r = composite_gauss(graded_edges(0.0, 60.0, 40, 0.55), 20);
  std::vector<double> terms(r.nodes.size());
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double l = r.nodes[i];
    terms[i] = r.weights[i] * f_of_lambda(l) * std::pow(2.0 * l, m - 1);
  }
  return sphere_area(m) * pairwise_sum(terms);
}

}  // namespace

Estimate mc_estimate(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 8) throw TooFewSamples("mc_estimate needs at least 8 samples");
  Estimate e;
  e.n = n;
  e.mean = pairwise_sum(x) / n;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = (x[i] - e.mean) * (x[i] - e.mean);
  const double Q = pairwise_sum(d2);
  e.variance = Q / (n - 1);
  e.stderr_mean = std::sqrt(e.variance / n);
  // Leave-one-out variances have the closed form (Q - n d_i^2 / (n-1)) / (n-2).
  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i) loo[i] = (Q - n * d2[i] / (n - 1.0)) / (n - 2.0);
  const double lbar = pairwise_sum(loo) / n;
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = (loo[i] - lbar) * (loo[i] - lbar);
  e.stderr_variance = std::sqrt((n - 1.0) / n * pairwise_sum(dev));
  return e;
}

Estimate mc_estimate(const SampleSet& s) { return mc_estimate(s.values); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

NormalityReport normality_test(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 100) throw TooFewSamples("normality_test needs at least 100 samples");
  const double mean = pairwise_sum(x) / n;
  std::vector<double> d2(n), d3(n), d4(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    d2[i] = d * d;
    d3[i] = d2[i] * d;
    d4[i] = d2[i] * d2[i];
  }
  const double m2 = pairwise_sum(d2) / n, m3 = pairwise_sum(d3) / n, m4 = pairwise_sum(d4) / n;
  NormalityReport r;
  if (m2 <= 0.0) {
    r.ks_distance = 1.0;
    return r;
  }
  r.skewness = m3 / std::pow(m2, 1.5);
  r.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  const double sd = std::sqrt(m2 * n / (n - 1.0));
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (x[i] - mean) / sd;
  std::sort(z.begin(), z.end());
  double D = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double F = normal_cdf(z[i]);
    D = std::max({D, (i + 1.0) / n - F, F - static_cast<double>(i) / n});
  }
  r.ks_distance = D;
  return r;
}

NormalityReport normality_test(const SampleSet& s) { return normality_test(s.values); }

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw TooFewSamples("two-sample KS needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = a.size(), nb = b.size();
  std::size_t i = 0, j = 0;
  double D = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    D = std::max(D, std::abs(i / na - j / nb));
  }
  return D;
}

LeadingConstants leading_constants(int m, int k) {
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("constants are tabulated for m = 1, 2, 3");
  if (k != 1) throw DomainError("closed-form constants exist for k = 1 only");
  LeadingConstants c;
  c.kappa_m = std::pow(kPi, m - 2) * boost::math::zeta(m + 2.0) / 4.0;
  c.nu_m1 = std::pow(kPi, m - 2.5) * boost::math::zeta(m + 0.5) / 8.0;
  // For m = 1, psi = Delta phi / 2, so the ||psi||^2 constant is divided by 4.
  c.smooth_constant = m == 1 ? c.kappa_m / 4.0 : c.kappa_m;
  return c;
}

double universal_integral(int m) {
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("universal_integral supports m = 1, 2, 3");
  return radial_integral(m, [](double l) { return F_derivs(l, 0); });
}

double universal_integral_truncated(int m, int n_terms) {
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("universal_integral supports m = 1, 2, 3");
  return radial_integral(m, [n_terms](double l) {
    double s = 0.0;
    for (int n = 1; n <= n_terms; ++n) s += std::exp(-2.0 * n * l) / (double(n) * n);
    return s / (4.0 * kPi * kPi);
  });
}

double smooth_variance_limit(const TestForm& phi, int N) {
  if (phi.dim_m != 1) throw UnsupportedDimension("the smooth variance limit is tabulated for m = 1");
  // ||Delta phi||^2 = 4 ||psi||^2.
  return leading_constants(1).smooth_constant * 4.0 * phi.psi_l2_sq / N;
}

}  // namespace zerolab
