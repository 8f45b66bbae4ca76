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
#include <map>
#include <vector>

namespace zerolab {

using cplx = std::complex<double>;

// Generators dz_j, dzbar_j, dv_j, dvbar_j (j = 0..m-1). A monomial is a bit
// mask over generator slots; its canonical order is increasing slot index,
// i.e. all dz, then all dzbar, then all dv, then all dvbar.
enum class Gen { dz, dzbar, dv, dvbar };

using Mono = std::uint16_t;

constexpr int gen_slot(Gen g, int j) { return 3 * static_cast<int>(g) + j; }
constexpr Mono gen_bit(Gen g, int j) { return static_cast<Mono>(1u << gen_slot(g, j)); }

// Mask of a subset J of {0..m-1} placed on the slots of family g.
Mono family_mask(Gen g, unsigned subset);
// Subset of {0..m-1} occupied by family g in monomial x.
unsigned family_subset(Mono x, Gen g);

class FormElement {
 public:
  FormElement() = default;
  explicit FormElement(int m) : m_(m) {}
  static FormElement scalar(int m, cplx c);
  static FormElement generator(int m, Gen g, int j, cplx c = 1.0);

  int dim() const { return m_; }
  const std::map<Mono, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Coefficient of the canonically ordered monomial.
  cplx coeff(Mono x) const;
  void add_term(Mono x, cplx c);

  FormElement& operator+=(const FormElement& b);
  FormElement operator+(const FormElement& b) const;
  FormElement operator-(const FormElement& b) const;
  FormElement operator*(cplx c) const;

 private:
  void prune();
  int m_ = 0;
  std::map<Mono, cplx> terms_;
};

// Sign (+1 or -1) of a wedge b of two canonical monomials relative to the
// canonical order of their union; 0 when they share a generator.
int wedge_sign(Mono a, Mono b);

FormElement wedge(const FormElement& a, const FormElement& b);
FormElement wedge_power(const FormElement& a, int k);

// Degree of a homogeneous element (number of generators); -1 for zero.
int degree(const FormElement& a);

struct PairingForms {
  FormElement vbar_dz;     // sum vbar_j dz_j
  FormElement v_dzbar;     // sum v_j dzbar_j
  FormElement dz_dzbar;    // sum dz_j ^ dzbar_j
  FormElement dv_dvbar;    // sum dv_j ^ dvbar_j
  FormElement vbar_dv;     // sum vbar_j dv_j
  FormElement v_dvbar;     // sum v_j dvbar_j
  FormElement dzbar_dv;    // sum dzbar_j ^ dv_j
  FormElement dz_dvbar;    // sum dz_j ^ dvbar_j
};

PairingForms pairing_forms(const std::vector<cplx>& v);

// dv_0 ^ dvbar_0 ^ ... ^ dv_{m-1} ^ dvbar_{m-1}
Mono dv_top_mask(int m);
int dv_top_sign(int m);

// Coefficient of dz^J ^ dzbar^K (each in increasing index order), followed
// by the paired dv top form when dv_top is set.
cplx extract_coefficient(const FormElement& a, unsigned J, unsigned K, bool dv_top);

}  // namespace zerolab
