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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "zerolab/errors.hpp"
#include "zerolab/monte_carlo.hpp"
#include "zerolab/test_forms.hpp"

using namespace zerolab;

TEST(MonteCarlo, DiscardBudget) {
  EXPECT_EQ(discard_budget(10), 1);
  EXPECT_EQ(discard_budget(10000), 1);
  EXPECT_EQ(discard_budget(50000), 5);
}

TEST(MonteCarlo, FailedAttemptsAreRedrawn) {
  std::vector<std::uint32_t> attempt(20, 99);
  const int d = run_trials(20, 7, 1, [&](std::size_t i, RngStream& r) {
    if (i == 4 && r.attempt() == 0) throw ConvergenceFailure("forced");
    attempt[i] = r.attempt();
  });
  EXPECT_EQ(d, 1);
  EXPECT_EQ(attempt[4], 1u);
  EXPECT_EQ(attempt[3], 0u);
}

TEST(MonteCarlo, BudgetExceededThrows) {
  EXPECT_THROW(run_trials(20, 7, 1,
                          [&](std::size_t i, RngStream& r) {
                            if (i < 2 && r.attempt() == 0) throw ConvergenceFailure("forced");
                          }),
               TooManyFailures);
  EXPECT_THROW(run_trials(5, 7, 1, [&](std::size_t, RngStream&) { throw ConvergenceFailure("always"); }),
               TooManyFailures);
}

TEST(MonteCarlo, ResultsIndependentOfThreadCount) {
  SmoothConfig cfg;
  cfg.N = 40;
  cfg.forms = {make_test_form(1, "zonal", {{"ell", 2}})};
  cfg.trials = 64;
  cfg.master_seed = 17;
  const SmoothSamples a = smooth_samples(cfg);
  cfg.threads = 4;
  const SmoothSamples b = smooth_samples(cfg);
  EXPECT_EQ(a.sets[0].values, b.sets[0].values);
  EXPECT_EQ(a.sets[0].seeds, b.sets[0].seeds);
}

TEST(MonteCarlo, PlRouteMeanAndFlags) {
  SmoothConfig cfg;
  cfg.N = 12;
  cfg.m = 2;
  cfg.route = Route::pl;
  cfg.grid_resolution = 8;
  cfg.refine = true;
  cfg.forms = {make_test_form(2, "power_sum", {{"degree", 2}}), make_test_form(2, "constant", {{"value", 1}})};
  cfg.trials = 200;
  const SmoothSamples s = smooth_samples(cfg);
  ASSERT_EQ(s.sets.size(), 2u);
  for (double v : s.sets[1].values) EXPECT_NEAR(v, 12 * std::numbers::pi, 1e-9);
  const Estimate e = mc_estimate(s.sets[0]);
  EXPECT_NEAR(e.mean, 12 * cfg.forms[0].omega_pairing / std::numbers::pi, 3.5 * e.stderr_mean);
  EXPECT_EQ(s.records[0][5].route, "pl");
}

TEST(MonteCarlo, RootRouteNeedsCP1) {
  SmoothConfig cfg;
  cfg.m = 2;
  cfg.forms = {make_test_form(2, "product")};
  EXPECT_THROW(smooth_samples(cfg), UnsupportedDimension);
  cfg.forms.clear();
  EXPECT_THROW(smooth_samples(cfg), ConfigError);
}

TEST(MonteCarlo, RoutesAgreeTrialByTrial) {
  const TestForm f = make_test_form(1, "zonal", {{"ell", 1}});
  const RouteComparison rc = compare_routes(60, f, 10, 256, 3);
  EXPECT_LE(rc.flagged, 1);
  EXPECT_LT(rc.max_abs_diff_unflagged, 1e-3 * f.sup_norm);
}

TEST(MonteCarlo, CountingComplementAddsUp) {
  const CapRegion cap(from_sphere(0.3, 1.0), 0.6);
  const CountingSamples cs = counting_samples(30, {cap}, 50, 9);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(cs.inside[0].values[i] + cs.complement[0].values[i], 30.0);
  const auto rows = counting_variance_experiment({30}, cap, 50, 9);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].variance, rows[0].complement_variance, 1e-9);
  EXPECT_GT(rows[0].prediction, 0.0);
}
