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
#include <functional>
#include <string>
#include <vector>

#include "zerolab/analysis.hpp"
#include "zerolab/geometry.hpp"
#include "zerolab/rng.hpp"
#include "zerolab/statistics.hpp"
#include "zerolab/test_forms.hpp"

namespace zerolab {

enum class Route { roots, pl };

const char* route_name(Route r);

struct TrialRecord {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;  // substream id of the accepted attempt
  int N = 0;
  double value = 0.0;
  std::string route;
  double residual = 0.0;
  unsigned flags = kFlagNone;
};

// Largest number of discarded trials tolerated for a run of n trials.
int discard_budget(std::size_t n);

// Runs trial(i, rng) for i in [0, n). A trial that throws ConvergenceFailure
// is re-drawn on the next attempt substream; exceeding the discard budget
// raises TooManyFailures. Returns the number of discarded attempts.
int run_trials(std::size_t n, std::uint64_t master_seed, int threads,
               const std::function<void(std::size_t, RngStream&)>& trial);

struct SmoothConfig {
  int N = 100;
  int m = 1;
  std::vector<TestForm> forms;
  Route route = Route::roots;
  std::size_t trials = 1000;
  int grid_resolution = 256;
  GridKind grid_kind = GridKind::product_gauss;
  // PL route: compare against a grid of resolution * 3/2 and flag changes
  // above tolerance * sup|phi|.
  bool refine = false;
  double pl_tolerance = 1e-3;
  std::uint64_t master_seed = 1;
  int threads = 1;
};

struct SmoothSamples {
  std::vector<SampleSet> sets;                 // one per form
  std::vector<std::vector<TrialRecord>> records;  // [form][trial]
  int discarded = 0;
  int flagged = 0;
};

SmoothSamples smooth_samples(const SmoothConfig& cfg);

struct RouteComparison {
  std::vector<double> root_values;
  std::vector<double> pl_values;
  std::vector<unsigned> flags;
  double max_abs_diff_unflagged = 0.0;
  int flagged = 0;
  int discarded = 0;
};

// Both routes on the same sections (m = 1).
RouteComparison compare_routes(int N, const TestForm& phi, std::size_t trials, int grid_resolution,
                               std::uint64_t master_seed, int threads = 1, double pl_tolerance = 1e-3);

struct CountingSamples {
  std::vector<SampleSet> inside;      // per cap
  std::vector<SampleSet> complement;  // roots outside the closed cap
  std::vector<TrialRecord> records;   // first cap
  int discarded = 0;
};

CountingSamples counting_samples(int N, const std::vector<CapRegion>& caps, std::size_t trials,
                                 std::uint64_t master_seed, int threads = 1);

struct CountingRow {
  int N = 0;
  double mean = 0.0;
  double variance = 0.0;
  double stderr_variance = 0.0;
  double complement_variance = 0.0;
  double complement_stderr = 0.0;
  double prediction = 0.0;  // sqrt(N) nu_11 |boundary U|
  double ratio = 0.0;
  double ratio_stderr = 0.0;
  int discarded = 0;
};

std::vector<CountingRow> counting_variance_experiment(const std::vector<int>& N_list, const CapRegion& cap,
                                                      std::size_t trials, std::uint64_t master_seed,
                                                      int threads = 1);

}  // namespace zerolab
