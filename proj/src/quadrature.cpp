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

#include "zerolab/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace zerolab {

namespace {

Rule1D reference_rule(int n) {
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::vector<double> pos = boost::math::legendre_p_zeros<double>(n);
  Rule1D r;
  r.nodes.reserve(n);
  r.weights.reserve(n);
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  // Boost returns the nonnegative zeros in increasing order.
  for (auto k = pos.rbegin(); k != pos.rend(); ++k) {
    if (*k == 0.0) continue;
    r.nodes.push_back(-*k);
    r.weights.push_back(weight(*k));
  }
  for (double x : pos) {
    r.nodes.push_back(x);
    r.weights.push_back(weight(x));
  }
  cache.emplace(n, r);
  return r;
}

}  // namespace

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  Rule1D r = reference_rule(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

Rule1D composite_gauss(const std::vector<double>& edges, int points_per_panel) {
  Rule1D out;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const Rule1D r = gauss_legendre(points_per_panel, edges[p], edges[p + 1]);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

std::vector<double> graded_edges(double a, double b, int panels, double ratio) {
  std::vector<double> e(panels + 1);
  e[0] = a;
  e[panels] = b;
  // Panel k has width proportional to ratio^(panels-1-k).
  double total = 0.0;
  for (int k = 0; k < panels; ++k) total += std::pow(ratio, panels - 1 - k);
  double acc = a;
  for (int k = 0; k + 1 < panels; ++k) {
    acc += (b - a) * std::pow(ratio, panels - 1 - k) / total;
    e[k + 1] = acc;
  }
  return e;
}

std::vector<double> log_edges(double a, double b, int panels) {
  std::vector<double> e(panels + 1);
  const double la = std::log(a), lb = std::log(b);
  for (int k = 0; k <= panels; ++k) e[k] = std::exp(la + (lb - la) * k / panels);
  e[0] = a;
  e[panels] = b;
  return e;
}

SimplexRule simplex_rule(int dim, int n) {
  SimplexRule s;
  s.dim = dim;
  if (dim == 0) {
    s.weights = {1.0};
    return s;
  }
  const Rule1D g = gauss_legendre(n, 0.0, 1.0);
  std::vector<int> idx(dim, 0);
  while (true) {
    // Jacobian of the collapsed map is prod_k (1-u_1)...(1-u_{k-1}).
    double rem = 1.0, w = 1.0;
    for (int k = 0; k < dim; ++k) {
      const double u = g.nodes[idx[k]];
      s.nodes.push_back(rem * u);
      w *= g.weights[idx[k]] * rem;
      rem *= (1.0 - u);
    }
    s.weights.push_back(w);
    int k = dim - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) break;
  }
  return s;
}

SphereRule sphere_rule(int m, int n_simplex, int n_phase) {
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  SphereRule s;
  s.m = m;
  const SimplexRule t = simplex_rule(m - 1, n_simplex);
  std::size_t nphase = 1;
  for (int j = 0; j < m; ++j) nphase *= n_phase;
  const double wphase = std::pow(kTwoPi / n_phase, m) * std::pow(2.0, 1 - m);
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::array<double, 3> tt{};
    double rest = 1.0;
    for (int j = 0; j + 1 < m; ++j) {
      tt[j] = t.nodes[i * (m - 1) + j];
      rest -= tt[j];
    }
    tt[m - 1] = rest > 0.0 ? rest : 0.0;
    for (std::size_t k = 0; k < nphase; ++k) {
      std::array<std::complex<double>, 3> u{};
      std::size_t r = k;
      for (int j = 0; j < m; ++j) {
        // Half-step offset keeps nodes off the coordinate axes.
        const double a = kTwoPi * (static_cast<double>(r % n_phase) + 0.5) / n_phase;
        u[j] = std::polar(std::sqrt(tt[j]), a);
        r /= n_phase;
      }
      s.u.push_back(u);
      s.w.push_back(t.weights[i] * wphase);
    }
  }
  return s;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

}  // namespace zerolab
