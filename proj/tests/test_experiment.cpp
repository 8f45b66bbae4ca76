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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zerolab/errors.hpp"
#include "zerolab/experiment.hpp"
#include "zerolab/rng.hpp"

using namespace zerolab;

namespace {

const char* kMeanConfig = R"({
  "experiment": "mean",
  "m": 1,
  "N_list": [20, 30],
  "trials": 40,
  "phi": {"family": "zonal", "params": {"ell": 2}},
  "route": "roots",
  "master_seed": 5,
  "write_trials": true
})";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, RoundTrip) {
  const ExperimentConfig c = parse_config(kMeanConfig);
  EXPECT_EQ(c.experiment, ExperimentKind::mean);
  EXPECT_EQ(c.N_list, (std::vector<int>{20, 30}));
  ASSERT_EQ(c.forms.size(), 1u);
  EXPECT_EQ(c.forms[0].params.at("ell"), 2.0);
  EXPECT_EQ(parse_config(config_to_json(c)), c);
}

TEST(Config, HashIgnoresOutputOnly) {
  ExperimentConfig a = parse_config(kMeanConfig), b = a;
  b.output = "/tmp/elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.master_seed = 6;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Config, ErrorsNameLineAndKey) {
  const std::string bad_m = "{\n  \"experiment\": \"constants\",\n  \"m\": 4\n}";
  EXPECT_NE(error_of(bad_m).find("line 3: m:"), std::string::npos) << error_of(bad_m);
  const std::string unknown = "{\n  \"experiment\": \"constants\",\n\n  \"colour\": 1\n}";
  EXPECT_NE(error_of(unknown).find("line 4: colour: unknown key"), std::string::npos) << error_of(unknown);
  const std::string route = "{\"experiment\": \"mean\", \"m\": 2, \"N\": 10, \"phi\": {\"family\": \"product\"}}";
  EXPECT_NE(error_of(route).find("route"), std::string::npos);
  EXPECT_NE(error_of("{\n\"experiment\": \"mean\",,\n}").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("{\"experiment\": \"nope\"}").find("experiment"), std::string::npos);
  EXPECT_NE(error_of("{\"experiment\": \"mean\", \"phi\": {\"family\": \"zonal\", \"params\": {\"ell\": 99}}}")
                .find("family"),
            std::string::npos);
  EXPECT_NE(error_of("{\"experiment\": \"counting\", \"cap\": {\"radius\": 2}}").find("radius"), std::string::npos);
}

TEST(Config, DegreeCapAppliesToSamplingOnly) {
  EXPECT_NE(error_of("{\"experiment\": \"mean\", \"N\": 1600, \"phi\": {\"family\": \"zonal\", \"params\": "
                     "{\"ell\": 1}}}")
                .find("N: degree 1600"),
            std::string::npos);
  EXPECT_EQ(error_of("{\"experiment\": \"kernel_checks\", \"N_list\": [1600, 10000]}"), "");
}

TEST(Run, ConstantsRowsAreExact) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::constants;
  const CsvTable t = parse_csv(run_experiment(c).results_csv);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.header[2], "name");
  EXPECT_EQ(t.rows[0][2], "smooth_constant");
  EXPECT_NEAR(std::stod(t.rows[0][3]), 0.0239142, 1e-7);
  EXPECT_NEAR(std::stod(t.rows[3][3]), 0.0956566, 1e-7);
}

TEST(Run, ByteIdenticalAcrossRunsAndThreads) {
  const ExperimentConfig c = parse_config(kMeanConfig);
  const RunResult a = run_experiment(c, {1, false});
  const RunResult b = run_experiment(c, {3, false});
  EXPECT_EQ(a.results_csv, b.results_csv);
  EXPECT_EQ(a.trials_csv, b.trials_csv);
  const CsvTable t = parse_csv(a.results_csv);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.header.back(), "config_hash");
  EXPECT_EQ(t.rows[0].back(), config_hash(c));
  EXPECT_EQ(parse_csv(a.trials_csv).rows.size(), 80u);
}

TEST(Run, WritesDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "zerolab_test_run";
  std::filesystem::remove_all(dir);
  ExperimentConfig c;
  c.experiment = ExperimentKind::bmk;
  c.m = 2;
  c.k = 2;
  EXPECT_EQ(run_to_directory(c, dir.string(), {}), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "results.csv"));
  const std::string man = slurp(dir / "manifest.json");
  for (const char* key : {"config_hash", "master_seed", "basis_order", "versions", "discarded_trials"})
    EXPECT_NE(man.find(key), std::string::npos) << key;
  std::filesystem::remove_all(dir);
}

TEST(Compare, IdenticalAndDifferent) {
  const CsvTable a = parse_csv("experiment,m,name,value\nconstants,1,x,1.0\nconstants,1,y,2.0\n");
  EXPECT_TRUE(compare_results(a, a).empty());
  EXPECT_EQ(compare_results(a, a).to_text(), "no differences\n");
  const CsvTable b = parse_csv("experiment,m,name,value\nconstants,1,x,1.0\nconstants,1,y,2.5\n");
  const CompareReport r = compare_results(a, b);
  ASSERT_EQ(r.diffs.size(), 1u);
  EXPECT_EQ(r.diffs[0].column, "value");
  EXPECT_NEAR(r.diffs[0].rel_dev, 0.2, 1e-12);
  EXPECT_TRUE(compare_results(a, b, 0.3).empty());
}

TEST(Compare, JoinsMonteCarloWithQuadrature) {
  const CsvTable mc = parse_csv(
      "experiment,m,N,phi,route,trials,mean,stderr_mean,variance,stderr_variance,discarded,flagged,master_seed,"
      "config_hash\nvariance_mc,1,100,zonal:ell=1,roots,100,0,0,0.5,0.01,0,0,1,abc\n");
  const CsvTable q = parse_csv(
      "experiment,m,N,phi,variance,near,far,refined_variance,suspect,limit,scaled_ratio,master_seed,config_hash\n"
      "variance_quad,1,100,zonal:ell=1,0.4,0,0,0.4,0,0,0,1,def\n");
  const CompareReport r = compare_results(mc, q);
  ASSERT_EQ(r.joined.rows.size(), 1u);
  EXPECT_NEAR(std::stod(r.joined.rows[0].back()), 1.25, 1e-12);
  const CsvTable other = parse_csv("experiment,m,name,value\nconstants,1,x,1.0\n");
  EXPECT_THROW(compare_results(mc, other), SchemaMismatch);
}

TEST(SectionJson, RoundTrip) {
  RngStream r(3, 4);
  const Section s = sample_section(7, 2, r);
  const Section t = section_from_json(section_to_json(s));
  EXPECT_EQ(t.degree, 7);
  EXPECT_EQ(t.dim_m, 2);
  EXPECT_EQ(t.coeffs, s.coeffs);
  Section bad = s;
  bad.coeffs.pop_back();
  EXPECT_THROW(section_from_json(section_to_json(bad)), SchemaMismatch);
}
