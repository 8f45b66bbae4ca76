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

#include "zerolab/forms.hpp"

#include <bit>
#include <cmath>

#include "zerolab/errors.hpp"

namespace zerolab {

namespace {
constexpr double kPrune = 1e-300;
}

Mono family_mask(Gen g, unsigned subset) {
  return static_cast<Mono>((subset & 7u) << gen_slot(g, 0));
}

unsigned family_subset(Mono x, Gen g) { return (x >> gen_slot(g, 0)) & 7u; }

FormElement FormElement::scalar(int m, cplx c) {
  FormElement f(m);
  f.add_term(0, c);
  return f;
}

FormElement FormElement::generator(int m, Gen g, int j, cplx c) {
  if (j < 0 || j >= m) throw DomainError("generator index out of range");
  FormElement f(m);
  f.add_term(gen_bit(g, j), c);
  return f;
}

cplx FormElement::coeff(Mono x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void FormElement::add_term(Mono x, cplx c) {
  cplx& t = terms_[x];
  t += c;
  if (std::abs(t) < kPrune) terms_.erase(x);
}

void FormElement::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kPrune)
      it = terms_.erase(it);
    else
      ++it;
  }
}

FormElement& FormElement::operator+=(const FormElement& b) {
  if (m_ == 0) m_ = b.m_;
  for (const auto& [x, c] : b.terms_) terms_[x] += c;
  prune();
  return *this;
}

FormElement FormElement::operator+(const FormElement& b) const {
  FormElement r = *this;
  r += b;
  return r;
}

FormElement FormElement::operator-(const FormElement& b) const { return *this + b * cplx(-1.0); }

FormElement FormElement::operator*(cplx c) const {
  FormElement r(m_);
  for (const auto& [x, t] : terms_) r.terms_[x] = t * c;
  r.prune();
  return r;
}

int wedge_sign(Mono a, Mono b) {
  if (a & b) return 0;
  int inversions = 0;
  for (unsigned rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const unsigned above = ~((2u << j) - 1u);
    inversions += std::popcount(static_cast<unsigned>(a) & above);
  }
  return (inversions & 1) ? -1 : 1;
}

FormElement wedge(const FormElement& a, const FormElement& b) {
  FormElement r(a.dim() ? a.dim() : b.dim());
  for (const auto& [xa, ca] : a.terms())
    for (const auto& [xb, cb] : b.terms()) {
      const int s = wedge_sign(xa, xb);
      if (s != 0) r.add_term(static_cast<Mono>(xa | xb), static_cast<double>(s) * ca * cb);
    }
  return r;
}

FormElement wedge_power(const FormElement& a, int k) {
  FormElement r = FormElement::scalar(a.dim(), 1.0);
  for (int i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

int degree(const FormElement& a) {
  if (a.is_zero()) return -1;
  return std::popcount(static_cast<unsigned>(a.terms().begin()->first));
}

PairingForms pairing_forms(const std::vector<cplx>& v) {
  const int m = static_cast<int>(v.size());
  if (m < 1 || m > 3) throw UnsupportedDimension("pairings need 1 <= m <= 3");
  PairingForms p{FormElement(m), FormElement(m), FormElement(m), FormElement(m),
                 FormElement(m), FormElement(m), FormElement(m), FormElement(m)};
  for (int j = 0; j < m; ++j) {
    const cplx vb = std::conj(v[j]);
    p.vbar_dz.add_term(gen_bit(Gen::dz, j), vb);
    p.v_dzbar.add_term(gen_bit(Gen::dzbar, j), v[j]);
    p.vbar_dv.add_term(gen_bit(Gen::dv, j), vb);
    p.v_dvbar.add_term(gen_bit(Gen::dvbar, j), v[j]);
    p.dz_dzbar += wedge(FormElement::generator(m, Gen::dz, j), FormElement::generator(m, Gen::dzbar, j));
    p.dv_dvbar += wedge(FormElement::generator(m, Gen::dv, j), FormElement::generator(m, Gen::dvbar, j));
    p.dzbar_dv += wedge(FormElement::generator(m, Gen::dzbar, j), FormElement::generator(m, Gen::dv, j));
    p.dz_dvbar += wedge(FormElement::generator(m, Gen::dz, j), FormElement::generator(m, Gen::dvbar, j));
  }
  return p;
}

Mono dv_top_mask(int m) {
  Mono x = 0;
  for (int j = 0; j < m; ++j) x |= gen_bit(Gen::dv, j) | gen_bit(Gen::dvbar, j);
  return x;
}

int dv_top_sign(int m) {
  // Sign of the pair-ordered product dv_0 dvbar_0 dv_1 dvbar_1 ... in canonical order.
  Mono acc = 0;
  int s = 1;
  for (int j = 0; j < m; ++j) {
    s *= wedge_sign(acc, gen_bit(Gen::dv, j));
    acc |= gen_bit(Gen::dv, j);
    s *= wedge_sign(acc, gen_bit(Gen::dvbar, j));
    acc |= gen_bit(Gen::dvbar, j);
  }
  return s;
}

cplx extract_coefficient(const FormElement& a, unsigned J, unsigned K, bool dv_top) {
  const int m = a.dim();
  const Mono zj = family_mask(Gen::dz, J), zk = family_mask(Gen::dzbar, K);
  Mono x = zj | zk;
  int sign = 1;
  if (dv_top) {
    const Mono top = dv_top_mask(m);
    sign = wedge_sign(x, top) * dv_top_sign(m);
    x |= top;
  }
  return static_cast<double>(sign) * a.coeff(x);
}

}  // namespace zerolab
