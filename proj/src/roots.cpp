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

#include "zerolab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "zerolab/errors.hpp"
#include "zerolab/simd/kernels.hpp"

namespace zerolab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Initial guesses on circles read off the upper convex hull of
// (k, log |b_k|), one circle per hull edge.
std::vector<cplx> newton_polygon_start(const std::vector<cplx>& b) {
  const int n = static_cast<int>(b.size()) - 1;
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    if (b[k] == 0.0) continue;
    const double lk = std::log(std::abs(b[k]));
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2], j = hull.back();
      const double li = std::log(std::abs(b[i])), lj = std::log(std::abs(b[j]));
      // Drop j when it lies on or below the chord from i to k.
      if ((lj - li) * (k - i) <= (lk - li) * (j - i))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  std::vector<cplx> z;
  z.reserve(n);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int i = hull[e], j = hull[e + 1], q = j - i;
    const double r = std::exp((std::log(std::abs(b[i])) - std::log(std::abs(b[j]))) / q);
    for (int t = 0; t < q; ++t) {
      const double ang = 2.0 * std::numbers::pi * (t + 0.25) / q + 2.0 * std::numbers::pi * e / n + 0.4;
      z.push_back(std::polar(r, ang));
    }
  }
  return z;
}

struct ChartEval {
  cplx inv_ratio;   // p'/p expressed for the original variable z
  double backward;  // |p| / sum |b_k| |z|^k in the chart used
};

double abs_horner(const std::vector<double>& absb, double r) {
  double acc = 0.0;
  for (auto it = absb.rbegin(); it != absb.rend(); ++it) acc = acc * r + *it;
  return acc;
}

}  // namespace

int ZeroSet::total_multiplicity() const { return std::accumulate(multiplicity.begin(), multiplicity.end(), 0); }

ZeroSet find_polynomial_roots(const std::vector<cplx>& a, const RootOptions& opt) {
  int lo = 0, hi = static_cast<int>(a.size()) - 1;
  while (lo <= hi && a[lo] == 0.0) ++lo;
  if (lo > hi) throw DomainError("the zero polynomial has no divisor");
  while (a[hi] == 0.0) --hi;
  const int at_zero = lo, at_inf = static_cast<int>(a.size()) - 1 - hi;
  const std::vector<cplx> b(a.begin() + lo, a.begin() + hi + 1);
  const int n = hi - lo;

  ZeroSet out;
  std::vector<cplx> hom0, hom1;  // homogeneous coordinates of the roots
  auto push = [&](cplx z0, cplx z1) {
    hom0.push_back(z0);
    hom1.push_back(z1);
  };
  for (int k = 0; k < at_zero; ++k) push(1.0, 0.0);
  for (int k = 0; k < at_inf; ++k) push(0.0, 1.0);

  if (n >= 1) {
    std::vector<double> bre(n + 1), bim(n + 1), rre(n + 1), rim(n + 1), absb(n + 1), absr(n + 1);
    for (int k = 0; k <= n; ++k) {
      bre[k] = b[k].real();
      bim[k] = b[k].imag();
      rre[n - k] = bre[k];
      rim[n - k] = bim[k];
      absb[k] = std::abs(b[k]);
      absr[n - k] = absb[k];
    }
    const auto& K = simd::kernels();

    auto evaluate = [&](const std::vector<cplx>& z, const std::vector<std::size_t>& idx, std::vector<ChartEval>& ev) {
      std::vector<std::size_t> in, outer;
      for (std::size_t i : idx) (std::norm(z[i]) <= 1.0 ? in : outer).push_back(i);
      ev.assign(z.size(), ChartEval{});
      auto run = [&](const std::vector<std::size_t>& set, bool reversed) {
        const std::size_t m = set.size();
        if (!m) return;
        std::vector<double> xr(m), xi(m), pr(m), pi(m), dr(m), di(m);
        for (std::size_t t = 0; t < m; ++t) {
          const cplx x = reversed ? 1.0 / z[set[t]] : z[set[t]];
          xr[t] = x.real();
          xi[t] = x.imag();
        }
        if (reversed)
          K.poly_eval_deriv(rre.data(), rim.data(), n, xr.data(), xi.data(), m, pr.data(), pi.data(), dr.data(), di.data());
        else
          K.poly_eval_deriv(bre.data(), bim.data(), n, xr.data(), xi.data(), m, pr.data(), pi.data(), dr.data(), di.data());
        for (std::size_t t = 0; t < m; ++t) {
          const cplx x(xr[t], xi[t]), p(pr[t], pi[t]), d(dr[t], di[t]);
          ChartEval& e = ev[set[t]];
          const double scale = abs_horner(reversed ? absr : absb, std::abs(x));
          e.backward = std::abs(p) / scale;
          if (p == 0.0) {
            e.inv_ratio = std::numeric_limits<double>::infinity();
            continue;
          }
          // With y = 1/z: p'/p = (n - y q'(y)/q(y)) / z.
          e.inv_ratio = reversed ? (static_cast<double>(n) - x * d / p) * x : d / p;
        }
      };
      run(in, false);
      run(outer, true);
    };

    std::vector<cplx> z = newton_polygon_start(b);
    std::vector<unsigned char> active(n, 1);
    std::vector<double> zr(n), zi(n), sr(n), si(n);
    std::vector<ChartEval> ev;
    const double conv_tol = 4.0 * n * kEps;
    int sweep = 0;
    for (; sweep < opt.max_sweeps; ++sweep) {
      std::vector<std::size_t> idx;
      for (int i = 0; i < n; ++i)
        if (active[i]) idx.push_back(i);
      if (idx.empty()) break;
      for (int i = 0; i < n; ++i) {
        zr[i] = z[i].real();
        zi[i] = z[i].imag();
      }
      K.aberth_sums(zr.data(), zi.data(), n, active.data(), sr.data(), si.data());
      evaluate(z, idx, ev);
      std::vector<cplx> next = z;
      for (std::size_t i : idx) {
        const ChartEval& e = ev[i];
        if (e.backward <= conv_tol || std::isinf(e.inv_ratio.real())) {
          active[i] = 0;
          continue;
        }
        const cplx w = 1.0 / (e.inv_ratio - cplx(sr[i], si[i]));
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
        next[i] = z[i] - w;
        if (std::abs(w) <= 4.0 * kEps * std::abs(z[i])) active[i] = 0;
      }
      z.swap(next);
    }
    out.sweeps = sweep;

    // One Newton polish in the better-conditioned chart, kept only if it helps.
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    evaluate(z, all, ev);
    std::vector<cplx> polished = z;
    for (int i = 0; i < n; ++i)
      if (std::isfinite(ev[i].inv_ratio.real())) polished[i] = z[i] - 1.0 / ev[i].inv_ratio;
    std::vector<ChartEval> ev2;
    evaluate(polished, all, ev2);
    for (int i = 0; i < n; ++i) {
      double be = ev[i].backward;
      if (std::isfinite(polished[i].real()) && ev2[i].backward < be) {
        z[i] = polished[i];
        be = ev2[i].backward;
      }
      if (!(be <= opt.backward_tol))
        throw ConvergenceFailure("root backward error " + std::to_string(be) + " after " +
                                 std::to_string(sweep) + " sweeps");
      out.residual = std::max(out.residual, be);
      if (std::norm(z[i]) <= 1.0)
        push(1.0, z[i]);
      else
        push(1.0 / z[i], 1.0);
    }
  }

  // Merge clusters by chordal distance on the sphere embedding.
  const std::size_t total = hom0.size();
  std::vector<ProjectivePoint> pts;
  std::vector<std::array<double, 3>> emb;
  pts.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    pts.emplace_back(std::vector<cplx>{hom0[i], hom1[i]});
    emb.push_back(sphere_embedding(pts.back()));
  }
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return emb[x][0] < emb[y][0]; });
  std::vector<int> owner(total, -1);
  const double chord = 2.0 * opt.merge_distance;
  for (std::size_t a = 0; a < total; ++a) {
    const std::size_t i = order[a];
    if (owner[i] >= 0) continue;
    owner[i] = static_cast<int>(out.roots.size());
    out.roots.push_back(pts[i]);
    out.multiplicity.push_back(1);
    for (std::size_t c = a + 1; c < total && emb[order[c]][0] - emb[i][0] < chord; ++c) {
      const std::size_t j = order[c];
      if (owner[j] >= 0) continue;
      const double dx = emb[i][1] - emb[j][1], dy = emb[i][2] - emb[j][2], dz = emb[i][0] - emb[j][0];
      if (dx * dx + dy * dy + dz * dz < chord * chord) {
        owner[j] = owner[i];
        ++out.multiplicity.back();
      }
    }
  }
  return out;
}

std::vector<cplx> section_polynomial(const Section& s) {
  if (s.dim_m != 1) throw UnsupportedDimension("root finding is implemented for m = 1");
  const BasisWeights& w = SectionEvaluator::get(s.degree, 1)->weights();
  std::vector<cplx> a(s.coeffs.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = s.coeffs[k] * w.weights[k];
  return a;
}

ZeroSet find_roots(const Section& s, const RootOptions& opt) {
  return find_polynomial_roots(section_polynomial(s), opt);
}

}  // namespace zerolab
