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

#include "zerolab/statistics.hpp"

#include <cmath>
#include <numbers>

#include "zerolab/errors.hpp"
#include "zerolab/quadrature.hpp"

namespace zerolab {

std::string flags_to_string(unsigned flags) {
  std::string s;
  auto add = [&](const char* name) {
    if (!s.empty()) s += '|';
    s += name;
  };
  if (flags & kFlagQuadratureSuspect) add("quadrature_suspect");
  if (flags & kFlagZeroOnGrid) add("zero_on_grid");
  return s;
}

double linear_stat_roots(const ZeroSet& zeros, const TestForm& phi) {
  if (phi.dim_m != 1) throw UnsupportedDimension("the root route needs m = 1");
  double s = 0.0;
  for (std::size_t i = 0; i < zeros.roots.size(); ++i) s += zeros.multiplicity[i] * phi.phi(zeros.roots[i]);
  return s;
}

double linear_stat_roots(const Section& s, const TestForm& phi) { return linear_stat_roots(find_roots(s), phi); }

int count_in_cap(const ZeroSet& zeros, const CapRegion& U) {
  int c = 0;
  for (std::size_t i = 0; i < zeros.roots.size(); ++i)
    if (U.contains(zeros.roots[i])) c += zeros.multiplicity[i];
  return c;
}

PLRoute::PLRoute(int N, const QuadratureGrid& grid, std::vector<TestForm> forms,
                 std::optional<QuadratureGrid> refine, double tolerance)
    : N_(N), forms_(std::move(forms)), tol_(tolerance) {
  for (const TestForm& f : forms_) {
    if (f.dim_m != grid.m) throw DomainError("test form and grid dimensions differ");
    det_.push_back(N * f.omega_pairing / std::numbers::pi);
  }
  primary_ = prepare(grid);
  if (refine) refine_ = prepare(*refine);
}

PLRoute::Level PLRoute::prepare(const QuadratureGrid& g) const {
  Level lv;
  lv.batches = make_batches(g.nodes);
  for (const TestForm& f : forms_) {
    std::vector<double> wp(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) wp[i] = g.weights[i] * f.psi(g.nodes[i]) / std::numbers::pi;
    lv.weighted_psi.push_back(std::move(wp));
  }
  return lv;
}

std::vector<double> PLRoute::apply(const Level& lv, const Section& s, unsigned& flags) const {
  const auto ev = SectionEvaluator::get(s.degree, s.dim_m);
  std::vector<double> logn(lv.batches.count);
  ev->log_norms(s, lv.batches, logn.data());
  for (double& x : logn) {
    if (!std::isfinite(x)) {
      // An exact zero on a node; drop the node and flag the trial.
      flags |= kFlagZeroOnGrid;
      x = 0.0;
    }
  }
  std::vector<double> out;
  std::vector<double> prod(logn.size());
  for (std::size_t f = 0; f < forms_.size(); ++f) {
    const auto& wp = lv.weighted_psi[f];
    for (std::size_t i = 0; i < logn.size(); ++i) prod[i] = wp[i] * logn[i];
    out.push_back(pairwise_sum(prod) + det_[f]);
  }
  return out;
}

std::vector<PLValue> PLRoute::evaluate(const Section& s) const {
  if (s.degree != N_) throw DomainError("section degree differs from the route degree");
  unsigned flags = kFlagNone;
  const std::vector<double> v = apply(primary_, s, flags);
  std::vector<PLValue> out(v.size());
  std::vector<double> r = v;
  if (refine_) r = apply(*refine_, s, flags);
  for (std::size_t f = 0; f < v.size(); ++f) {
    out[f].value = v[f];
    out[f].refined_value = r[f];
    out[f].flags = flags;
    if (refine_ && std::abs(v[f] - r[f]) > tol_ * std::max(forms_[f].sup_norm, 1e-300))
      out[f].flags |= kFlagQuadratureSuspect;
  }
  return out;
}

double linear_stat_pl(const Section& s, const TestForm& phi, const QuadratureGrid& grid) {
  return PLRoute(s.degree, grid, {phi}).evaluate(s).front().value;
}

}  // namespace zerolab
