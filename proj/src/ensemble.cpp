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

#include "zerolab/ensemble.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "zerolab/errors.hpp"
#include "zerolab/simd/kernels.hpp"

namespace zerolab {

int max_degree(int m) {
  switch (m) {
    case 1:
      return 1000;
    case 2:
      return 60;
    case 3:
      return 25;
    default:
      throw UnsupportedDimension("m must be 1, 2 or 3");
  }
}

std::size_t section_dimension(int N, int m) {
  std::size_t r = 1;
  for (int k = 1; k <= m; ++k) r = r * static_cast<std::size_t>(N + k) / static_cast<std::size_t>(k);
  return r;
}

std::vector<std::array<int, kMaxDim>> multi_indices(int N, int m) {
  std::vector<std::array<int, kMaxDim>> out;
  out.reserve(section_dimension(N, m));
  std::array<int, kMaxDim> a{};
  // Depth-first enumeration keeps the first coordinate slowest.
  auto rec = [&](auto&& self, int level, int left) -> void {
    if (level == m) {
      out.push_back(a);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      a[level] = k;
      self(self, level + 1, left - k);
    }
    a[level] = 0;
  };
  rec(rec, 0, N);
  return out;
}

BasisWeights basis_weights(int N, int m) {
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("m must be 1, 2 or 3");
  if (N < 1) throw DomainError("degree must be positive");
  if (N > max_degree(m)) throw DegreeTooLarge("degree exceeds the supported maximum for this m");
  BasisWeights b;
  b.degree = N;
  b.dim_m = m;
  const double base = std::lgamma(N + m + 1.0) - m * std::log(std::numbers::pi);
  for (const auto& a : multi_indices(N, m)) {
    int tot = 0;
    double lw = base;
    for (int j = 0; j < m; ++j) {
      lw -= std::lgamma(a[j] + 1.0);
      tot += a[j];
    }
    lw -= std::lgamma(N - tot + 1.0);
    b.log_weights.push_back(0.5 * lw);
    b.weights.push_back(std::exp(0.5 * lw));
  }
  return b;
}

Section sample_section(int N, int m, RngStream& rng) {
  if (N > max_degree(m)) throw DegreeTooLarge("degree exceeds the supported maximum for this m");
  Section s;
  s.degree = N;
  s.dim_m = m;
  s.seed = rng.substream_id();
  const std::size_t d = section_dimension(N, m);
  s.coeffs.resize(d);
  for (std::size_t i = 0; i < d; ++i) s.coeffs[i] = rng.complex_normal();
  return s;
}

cplx PolyValue::value() const {
  if (!std::isfinite(log_mag)) return 0.0;
  return phase * std::exp(log_mag);
}

PointBatches make_batches(const std::vector<ProjectivePoint>& pts) {
  PointBatches b;
  if (pts.empty()) return b;
  b.m = pts.front().dim();
  b.count = pts.size();
  std::map<int, ChartBatch> by_chart;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const ProjectivePoint& z = pts[i];
    const int c = z.max_chart();
    ChartBatch& cb = by_chart[c];
    cb.chart = c;
    cb.index.push_back(i);
    const cplx zc = z[c];
    int k = 0;
    for (int j = 0; j <= b.m; ++j) {
      if (j == c) continue;
      const cplx x = z[j] / zc;
      cb.xre[k].push_back(x.real());
      cb.xim[k].push_back(x.imag());
      ++k;
    }
    cb.log_zc.push_back(std::log(std::abs(zc)));
  }
  for (auto& [c, cb] : by_chart) b.charts.push_back(std::move(cb));
  return b;
}

SectionEvaluator::SectionEvaluator(int N, int m) : N_(N), m_(m), w_(basis_weights(N, m)) {
  const auto idx = multi_indices(N, m);
  std::unordered_map<std::uint64_t, std::uint32_t> rank;
  auto key = [](const std::array<int, kMaxDim>& a) {
    return (std::uint64_t(a[0]) << 40) | (std::uint64_t(a[1]) << 20) | std::uint64_t(a[2]);
  };
  for (std::uint32_t i = 0; i < idx.size(); ++i) rank.emplace(key(idx[i]), i);

  perm_.resize(m + 1);
  for (int c = 0; c <= m; ++c) {
    perm_[c].reserve(idx.size());
    for (const auto& ap : idx) {
      std::array<int, kMaxDim + 1> beta{};
      int tot = 0, k = 0;
      for (int j = 0; j <= m; ++j) {
        if (j == c) continue;
        beta[j] = ap[k++];
        tot += beta[j];
      }
      beta[c] = N - tot;
      std::array<int, kMaxDim> a{};
      for (int j = 0; j < m; ++j) a[j] = beta[j + 1];
      perm_[c].push_back(rank.at(key(a)));
    }
  }

  block_.assign(m, std::vector<std::size_t>(N + 1));
  for (int level = 0; level < m; ++level)
    for (int d = 0; d <= N; ++d) block_[level][d] = section_dimension(d, m - level);
}

std::shared_ptr<const SectionEvaluator> SectionEvaluator::get(int N, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const SectionEvaluator>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{N, m}];
  if (!slot) slot = std::make_shared<SectionEvaluator>(N, m);
  return slot;
}

void SectionEvaluator::chart_coeffs(const Section& s, int chart, std::vector<double>& re,
                                    std::vector<double>& im) const {
  if (s.degree != N_ || s.dim_m != m_) throw DomainError("section does not match evaluator");
  const auto& p = perm_[chart];
  re.resize(p.size());
  im.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const cplx a = s.coeffs[p[i]] * w_.weights[p[i]];
    re[i] = a.real();
    im[i] = a.imag();
  }
}

void SectionEvaluator::nested(int level, int deg, const double* cre, const double* cim,
                              const std::array<const double*, kMaxDim>& xr,
                              const std::array<const double*, kMaxDim>& xi, std::size_t n,
                              double* ore, double* oim) const {
  const auto& k = simd::kernels();
  if (level == m_ - 1) {
    k.poly_eval(cre, cim, deg, xr[level], xi[level], n, ore, oim);
    return;
  }
  const auto& inner = block_[level + 1];
  std::vector<std::size_t> offset(deg + 1, 0);
  for (int j = 1; j <= deg; ++j) offset[j] = offset[j - 1] + inner[deg - j + 1];
  std::vector<double> tmp(2 * n);
  nested(level + 1, 0, cre + offset[deg], cim + offset[deg], xr, xi, n, ore, oim);
  for (int j = deg - 1; j >= 0; --j) {
    nested(level + 1, deg - j, cre + offset[j], cim + offset[j], xr, xi, n, tmp.data(), tmp.data() + n);
    k.horner_step(ore, oim, xr[level], xi[level], tmp.data(), tmp.data() + n, n);
  }
}

void SectionEvaluator::eval_chart(const Section& s, int chart, const ChartBatch& b, double* ore,
                                  double* oim) const {
  std::vector<double> cre, cim;
  chart_coeffs(s, chart, cre, cim);
  std::array<const double*, kMaxDim> xr{}, xi{};
  for (int j = 0; j < m_; ++j) {
    xr[j] = b.xre[j].data();
    xi[j] = b.xim[j].data();
  }
  nested(0, N_, cre.data(), cim.data(), xr, xi, b.index.size(), ore, oim);
}

PolyValue SectionEvaluator::eval(const Section& s, const ProjectivePoint& z) const {
  const PointBatches b = make_batches({z});
  const ChartBatch& cb = b.charts.front();
  double re = 0.0, im = 0.0;
  eval_chart(s, cb.chart, cb, &re, &im);
  const cplx f(re, im);
  PolyValue v;
  const double a = std::abs(f);
  if (a == 0.0) {
    v.phase = 0.0;
    v.log_mag = -std::numeric_limits<double>::infinity();
    return v;
  }
  const cplx zc = z[cb.chart];
  v.log_mag = std::log(a) + N_ * cb.log_zc[0];
  v.phase = (f / a) * std::polar(1.0, N_ * std::arg(zc));
  return v;
}

double SectionEvaluator::log_norm(const Section& s, const ProjectivePoint& z) const {
  return eval(s, z).log_mag;
}

void SectionEvaluator::log_norms(const Section& s, const PointBatches& b, double* out) const {
  std::vector<double> cre, cim, re, im;
  constexpr std::size_t kChunk = 512;
  for (const ChartBatch& cb : b.charts) {
    chart_coeffs(s, cb.chart, cre, cim);
    const std::size_t n = cb.index.size();
    re.resize(n);
    im.resize(n);
    for (std::size_t lo = 0; lo < n; lo += kChunk) {
      const std::size_t len = std::min(kChunk, n - lo);
      std::array<const double*, kMaxDim> xr{}, xi{};
      for (int j = 0; j < m_; ++j) {
        xr[j] = cb.xre[j].data() + lo;
        xi[j] = cb.xim[j].data() + lo;
      }
      nested(0, N_, cre.data(), cim.data(), xr, xi, len, re.data() + lo, im.data() + lo);
    }
    for (std::size_t i = 0; i < n; ++i)
      out[cb.index[i]] = std::log(std::hypot(re[i], im[i])) + N_ * cb.log_zc[i];
  }
}

double eval_log_norm(const Section& s, const ProjectivePoint& z) {
  return SectionEvaluator::get(s.degree, s.dim_m)->log_norm(s, z);
}

PolyValue eval_poly(const Section& s, const ChartCoords& chart) {
  const ProjectivePoint z = from_chart(s.dim_m, chart);
  return SectionEvaluator::get(s.degree, s.dim_m)->eval(s, z);
}

}  // namespace zerolab
