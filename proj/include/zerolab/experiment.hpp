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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zerolab/ensemble.hpp"

namespace zerolab {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { mean, variance_mc, variance_quad, counting, normality, constants, bmk, kernel_checks };

const char* experiment_name(ExperimentKind k);
ExperimentKind parse_experiment(const std::string& s);

struct FormSpec {
  std::string family;
  std::map<std::string, double> params;
  bool operator==(const FormSpec&) const = default;
};

struct CapSpec {
  double radius = 0.7853981633974483;
  double cos_theta = 1.0;  // center on the sphere embedding
  double azimuth = 0.0;
  bool operator==(const CapSpec&) const = default;
};

struct Tolerances {
  double pl = 1e-3;             // PL refinement flag, relative to sup|phi|
  double quad_suspect = 1e-6;   // variance quadrature refinement
  double bmk = 1e-4;            // radial refinement of the B forms
  bool operator==(const Tolerances&) const = default;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::constants;
  int m = 1;
  int k = 1;
  std::vector<int> N_list{100};
  std::size_t trials = 1000;
  std::vector<FormSpec> forms;
  std::string route = "roots";
  std::vector<CapSpec> caps;
  int grid_resolution = 256;
  bool pl_refine = true;
  std::uint64_t master_seed = 1;
  std::string output;
  bool write_trials = false;
  Tolerances tolerances;
  bool operator==(const ExperimentConfig&) const = default;
};

// Parses and validates a JSON config. Errors are ConfigError with a
// "line L: ..." prefix pointing at the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);
void validate_config(const ExperimentConfig& cfg);

// FNV-1a of the canonical JSON serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

struct RunOptions {
  int threads = 1;
  bool allow_suspect = false;
};

struct RunResult {
  std::string results_csv;
  std::string manifest_json;
  std::string trials_csv;  // empty unless requested
  int discarded = 0;
  int suspect = 0;  // QuadratureSuspect / IntegrationUnstable events
};

// Runs the experiment in memory.
RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {});

// Runs and writes results.csv, manifest.json and optionally trials.csv under
// `out_dir`. Returns the process exit status: 0, or 3 for suspect results
// without allow_suspect.
int run_to_directory(const ExperimentConfig& cfg, const std::string& out_dir, const RunOptions& opt,
                     RunResult* result = nullptr);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

struct CompareReport {
  // Per-cell differences: row index, column, values and relative deviation.
  struct Cell {
    std::size_t row;
    std::string column;
    std::string a, b;
    double rel_dev;
  };
  std::vector<Cell> diffs;
  CsvTable joined;  // variance_mc vs variance_quad join with a ratio column
  bool empty() const { return diffs.empty() && joined.rows.empty(); }
  std::string to_text() const;
  std::string to_csv() const;
};

// Same schema: cell-by-cell diff. variance_mc against variance_quad: join on
// (N, phi) with ratio = mc / quad. Anything else throws SchemaMismatch.
CompareReport compare_results(const CsvTable& a, const CsvTable& b, double rel_tol = 0.0);

// Replay record of a sampled section.
std::string section_to_json(const Section& s);
Section section_from_json(const std::string& text);

}  // namespace zerolab
