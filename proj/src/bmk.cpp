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

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "zerolab/analysis.hpp"
#include "zerolab/bipotential.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/forms.hpp"
#include "zerolab/quadrature.hpp"

namespace zerolab {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

std::vector<unsigned> subsets_of_size(int m, int p) {
  std::vector<unsigned> out;
  for (unsigned s = 0; s < (1u << m); ++s)
    if (std::popcount(s) == p) out.push_back(s);
  return out;
}

std::vector<std::pair<unsigned, unsigned>> make_basis(int m, int p) {
  std::vector<std::pair<unsigned, unsigned>> b;
  for (unsigned J : subsets_of_size(m, p))
    for (unsigned K : subsets_of_size(m, p)) b.emplace_back(J, K);
  return b;
}

// (i/2)^p (-1)^{p(p-1)/2}: makes eps_{JJ} a positive (p,p)-form.
cplx eps_scale(int p) {
  const double sigma = ((p * (p - 1) / 2) % 2) ? -1.0 : 1.0;
  return std::pow(0.5 * kI, p) * sigma;
}

// Sign of dv_0 dvbar_0 ... dz_0 dzbar_0 ... relative to canonical order.
int top_sign(int m) {
  Mono acc = 0;
  int s = 1;
  auto push = [&](Mono g) {
    s *= wedge_sign(acc, g);
    acc |= g;
  };
  for (int j = 0; j < m; ++j) {
    push(gen_bit(Gen::dv, j));
    push(gen_bit(Gen::dvbar, j));
  }
  for (int j = 0; j < m; ++j) {
    push(gen_bit(Gen::dz, j));
    push(gen_bit(Gen::dzbar, j));
  }
  return s;
}

using Triple = std::tuple<int, int, int>;

// Angular averages of T4^a T2^b T0^c over the unit sphere for a + b + c = e.
std::map<Triple, FormElement> angular_products(int m, int e) {
  std::map<Triple, FormElement> out;
  for (int a = 0; a <= e; ++a)
    for (int b = 0; a + b <= e; ++b) out[{a, b, e - a - b}] = FormElement(m);
  // Exact for the degree-2e polynomials in u, conj(u) that survive averaging.
  const SphereRule sr = sphere_rule(m, e + 1, 2 * e + 2);
  for (std::size_t q = 0; q < sr.w.size(); ++q) {
    const std::vector<cplx> u(sr.u[q].begin(), sr.u[q].begin() + m);
    const VarInftyParts t = var_infty_parts(u);
    std::vector<FormElement> p4{FormElement::scalar(m, 1.0)}, p2 = p4, p0 = p4;
    for (int i = 1; i <= e; ++i) {
      p4.push_back(wedge(p4.back(), t.t4));
      p2.push_back(wedge(p2.back(), t.t2));
      p0.push_back(wedge(p0.back(), t.t0));
    }
    for (auto& [key, acc] : out) {
      const auto [a, b, c] = key;
      acc += wedge(wedge(p4[a], p2[b]), p0[c]) * sr.w[q];
    }
  }
  return out;
}

double radial_integral(int m, const Triple& n, const Rule1D& r) {
  const auto [a, b, c] = n;
  const int power = 4 * a + 2 * b + 2 * m - 1;
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double x = r.nodes[i];
    double A, B, C;
    var_infty_coefficients(x * x, A, B, C);
    s += r.weights[i] * F_derivs(0.5 * x * x, 0) * std::pow(A, a) * std::pow(B, b) * std::pow(C, c) *
         std::pow(x, power);
  }
  return s;
}

// M^j_{JK,AB} on the basis of (p,p)-forms, p = m - j + 1.
std::vector<cplx> level_matrix(int m, int j, const BmkOptions& opt, double& change) {
  const int p = m - j + 1, e = j - 1;
  const auto basis = make_basis(m, p);
  const std::size_t n = basis.size();
  std::map<std::pair<unsigned, unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[basis[i]] = i;

  const Rule1D coarse = composite_gauss(log_edges(opt.r_min, opt.r_max, opt.radial_panels), opt.radial_points);
  const Rule1D fine = composite_gauss(log_edges(opt.r_min, opt.r_max, 2 * opt.radial_panels), opt.radial_points);

  const Mono all = static_cast<Mono>(dv_top_mask(m) | family_mask(Gen::dz, (1u << m) - 1) |
                                     family_mask(Gen::dzbar, (1u << m) - 1));
  const cplx scale = std::pow(eps_scale(p), 2) * std::pow(2.0 / kI, 2 * m) * static_cast<double>(top_sign(m));

  std::vector<cplx> M(n * n, 0.0);
  for (const auto& [key, form] : angular_products(m, e)) {
    const auto [a, b, c] = key;
    const double multinom = factorial(e) / (factorial(a) * factorial(b) * factorial(c));
    const double rc = radial_integral(m, key, coarse), rf = radial_integral(m, key, fine);
    const double diff = std::abs(rf - rc), mag = std::max(std::abs(rf), 1e-300);
    if (diff > opt.tolerance * mag && diff > 1e-14) throw IntegrationUnstable("radial integral did not converge");
    change = std::max(change, diff / mag);
    for (const auto& [x, coef] : form.terms()) {
      // The complement must be eps_JK(v) ^ eps_AB(z) with |J| = |K| = |A| = |B| = p.
      const Mono rest = static_cast<Mono>(all & ~x);
      const unsigned J = family_subset(rest, Gen::dv), K = family_subset(rest, Gen::dvbar);
      const unsigned A = family_subset(rest, Gen::dz), B = family_subset(rest, Gen::dzbar);
      if (std::popcount(J) != p || std::popcount(K) != p || std::popcount(A) != p || std::popcount(B) != p) continue;
      const Mono ev = static_cast<Mono>(family_mask(Gen::dv, J) | family_mask(Gen::dvbar, K));
      const Mono ez = static_cast<Mono>(family_mask(Gen::dz, A) | family_mask(Gen::dzbar, B));
      const int s = wedge_sign(x, ev) * wedge_sign(static_cast<Mono>(x | ev), ez);
      M[index.at({J, K}) * n + index.at({A, B})] += static_cast<double>(s) * multinom * rf * coef * scale;
    }
  }
  return M;
}

// Matrix of alpha -> omega^{q} ^ alpha from (p,p)-forms to (p+q,p+q)-forms in
// the eps bases, omega = (i/2) sum dz ^ dzbar. Rows index the target basis.
std::vector<cplx> lefschetz(int m, int p, int q) {
  const auto src = make_basis(m, p), dst = make_basis(m, p + q);
  FormElement omega(m);
  for (int j = 0; j < m; ++j)
    omega.add_term(static_cast<Mono>(gen_bit(Gen::dz, j) | gen_bit(Gen::dzbar, j)), 0.5 * kI);
  const FormElement wq = wedge_power(omega, q);
  std::vector<cplx> L(dst.size() * src.size(), 0.0);
  for (std::size_t c = 0; c < src.size(); ++c) {
    FormElement e(m);
    e.add_term(static_cast<Mono>(family_mask(Gen::dz, src[c].first) | family_mask(Gen::dzbar, src[c].second)),
               eps_scale(p));
    const FormElement img = wedge(wq, e);
    for (std::size_t r = 0; r < dst.size(); ++r)
      L[r * src.size() + c] = extract_coefficient(img, dst[r].first, dst[r].second, false) / eps_scale(p + q);
  }
  return L;
}

}  // namespace

double HermitianFormMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : entries) s += std::norm(z);
  return std::sqrt(s);
}

double HermitianFormMatrix::hermitian_defect() const {
  const std::size_t n = size();
  double s = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) s += std::norm(at(r, c) - std::conj(at(c, r)));
  return std::sqrt(s);
}

HermitianFormMatrix bmk_form(int m, int k, const BmkOptions& opt) {
  if (m < 1 || m > kMaxDim) throw UnsupportedDimension("bmk_form supports m = 1, 2, 3");
  if (k < 1 || k > m) throw DomainError("bmk_form needs 1 <= k <= m");
  using Mat = Eigen::MatrixXcd;
  const int pk = m - k + 1;
  HermitianFormMatrix out;
  out.m = m;
  out.k = k;
  out.basis = make_basis(m, pk);
  const std::size_t nk = out.basis.size();
  Mat B = Mat::Zero(nk, nk);

  for (int j = 1; j <= k; ++j) {
    const int pj = m - j + 1;
    const auto bj = make_basis(m, pj);
    const std::size_t nj = bj.size();
    const std::vector<cplx> M = level_matrix(m, j, opt, out.refinement_change);
    std::map<std::pair<unsigned, unsigned>, std::size_t> index;
    for (std::size_t i = 0; i < nj; ++i) index[bj[i]] = i;
    // H(alpha, beta) = M(alpha, conj(beta)), and conj swaps the (J, K) roles.
    Mat H(nj, nj);
    for (std::size_t r = 0; r < nj; ++r)
      for (std::size_t c = 0; c < nj; ++c) {
        const std::size_t cs = index.at({bj[c].second, bj[c].first});
        H(r, c) = M[r * nj + cs];
      }
    const std::vector<cplx> Lv = lefschetz(m, pk, k - j);
    Mat L(nj, nk);
    for (std::size_t r = 0; r < nj; ++r)
      for (std::size_t c = 0; c < nk; ++c) L(r, c) = Lv[r * nk + c];
    const double w = binomial(k, j) * std::pow(kPi, -2.0 * (k - j));
    B += w * (L.transpose() * H * L.conjugate());
  }

  out.entries.resize(nk * nk);
  for (std::size_t r = 0; r < nk; ++r)
    for (std::size_t c = 0; c < nk; ++c) out.entries[r * nk + c] = B(r, c);
  const Mat herm = 0.5 * (B + B.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.eigenvalues.push_back(es.eigenvalues()(i));
  return out;
}

std::string bmk_basis_label(const HermitianFormMatrix& b, std::size_t i) {
  auto idx = [&](unsigned s) {
    std::string t;
    for (int j = 0; j < b.m; ++j)
      if (s & (1u << j)) t += std::to_string(j + 1);
    return t;
  };
  return "J" + idx(b.basis[i].first) + "_K" + idx(b.basis[i].second);
}

}  // namespace zerolab
