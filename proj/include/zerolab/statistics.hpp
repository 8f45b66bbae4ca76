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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zerolab/ensemble.hpp"
#include "zerolab/geometry.hpp"
#include "zerolab/roots.hpp"
#include "zerolab/test_forms.hpp"

namespace zerolab {

enum TrialFlag : unsigned {
  kFlagNone = 0,
  kFlagQuadratureSuspect = 1u << 0,
  kFlagZeroOnGrid = 1u << 1,
};

std::string flags_to_string(unsigned flags);

double linear_stat_roots(const ZeroSet& zeros, const TestForm& phi);
double linear_stat_roots(const Section& s, const TestForm& phi);

int count_in_cap(const ZeroSet& zeros, const CapRegion& U);

struct PLValue {
  double value = 0.0;
  double refined_value = 0.0;  // equals value when no refinement grid is set
  unsigned flags = kFlagNone;
};

// Poincare-Lelong evaluation of (Z_s, phi) on a quadrature grid:
// (1/pi) sum_i w_i log||s(z_i)|| psi(z_i) + (N/pi) int omega ^ phi.
// Several test forms share one pass over log||s||. An optional second grid
// provides the refinement check behind the QuadratureSuspect flag.
class PLRoute {
 public:
  PLRoute(int N, const QuadratureGrid& grid, std::vector<TestForm> forms,
          std::optional<QuadratureGrid> refine = std::nullopt, double tolerance = 0.0);

  std::vector<PLValue> evaluate(const Section& s) const;
  const std::vector<TestForm>& forms() const { return forms_; }
  // Deterministic part (N/pi) int omega ^ phi.
  double deterministic_term(std::size_t form) const { return det_[form]; }

 private:
  struct Level {
    PointBatches batches;
    std::vector<std::vector<double>> weighted_psi;  // w_i psi(z_i) / pi per form
  };
  Level prepare(const QuadratureGrid& g) const;
  std::vector<double> apply(const Level& lv, const Section& s, unsigned& flags) const;

  int N_;
  std::vector<TestForm> forms_;
  std::vector<double> det_;
  Level primary_;
  std::optional<Level> refine_;
  double tol_;
};

double linear_stat_pl(const Section& s, const TestForm& phi, const QuadratureGrid& grid);

}  // namespace zerolab
