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
#include <memory>
#include <vector>

#include "zerolab/geometry.hpp"
#include "zerolab/rng.hpp"

namespace zerolab {

// Largest supported degree for m = 1, 2, 3.
int max_degree(int m);

// Number of monomials of degree <= N in m variables, binom(N+m, m).
std::size_t section_dimension(int N, int m);

// Multi-indices (alpha_1..alpha_m), |alpha| <= N, nested by first coordinate:
// alpha_1 runs slowest and every later coordinate ranges over what is left.
std::vector<std::array<int, kMaxDim>> multi_indices(int N, int m);

struct BasisWeights {
  int degree = 0;
  int dim_m = 0;
  std::vector<double> weights;
  std::vector<double> log_weights;
};

BasisWeights basis_weights(int N, int m);

struct Section {
  int degree = 0;
  int dim_m = 0;
  std::uint64_t seed = 0;
  std::vector<cplx> coeffs;
};

Section sample_section(int N, int m, RngStream& rng);

struct PolyValue {
  cplx phase;       // unit modulus; 0 at an exact zero
  double log_mag;   // -inf at an exact zero
  cplx value() const;
};

// Points grouped by their max-modulus chart with affine coordinates in
// structure-of-arrays form, ready for batched evaluation.
struct ChartBatch {
  int chart = 0;
  std::vector<std::size_t> index;
  std::array<std::vector<double>, kMaxDim> xre, xim;
  std::vector<double> log_zc;  // log |Z_chart|
};

struct PointBatches {
  int m = 0;
  std::size_t count = 0;
  std::vector<ChartBatch> charts;
};

PointBatches make_batches(const std::vector<ProjectivePoint>& pts);

// Evaluation plan for sections of a fixed (N, m): per-chart coefficient
// permutations and basis weights. Plans are cached and immutable.
class SectionEvaluator {
 public:
  SectionEvaluator(int N, int m);
  static std::shared_ptr<const SectionEvaluator> get(int N, int m);

  int degree() const { return N_; }
  int dim() const { return m_; }
  const BasisWeights& weights() const { return w_; }

  PolyValue eval(const Section& s, const ProjectivePoint& z) const;
  double log_norm(const Section& s, const ProjectivePoint& z) const;
  // log ||s||_{h^N} at every batched point, written to out[index].
  void log_norms(const Section& s, const PointBatches& b, double* out) const;
  // Values of s in the given chart at points with unit chart component,
  // i.e. sum_alpha a_alpha x^alpha for affine x.
  void eval_chart(const Section& s, int chart, const ChartBatch& b, double* ore, double* oim) const;

 private:
  void chart_coeffs(const Section& s, int chart, std::vector<double>& re, std::vector<double>& im) const;
  void nested(int level, int deg, const double* cre, const double* cim,
              const std::array<const double*, kMaxDim>& xr, const std::array<const double*, kMaxDim>& xi,
              std::size_t n, double* ore, double* oim) const;

  int N_, m_;
  BasisWeights w_;
  std::vector<std::vector<std::uint32_t>> perm_;  // perm_[c][layout index] = original index
  std::vector<std::vector<std::size_t>> block_;   // block_[level][deg] = monomial count
};

double eval_log_norm(const Section& s, const ProjectivePoint& z);

// f(z) (1 + |z|^2)^{-N/2} for affine z in the given chart.
PolyValue eval_poly(const Section& s, const ChartCoords& chart);

}  // namespace zerolab
