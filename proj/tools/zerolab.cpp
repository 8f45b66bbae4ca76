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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "zerolab/errors.hpp"
#include "zerolab/experiment.hpp"
#include "zerolab/test_forms.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("ZEROLAB_OUTPUT_DIR");
  return env && *env ? env : "zerolab_out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zerolab: zero statistics of random holomorphic sections on CP^m"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int threads = 1;
  bool allow_suspect = false;
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  auto* seed_opt = run->add_option("--seed", seed, "override master_seed");
  run->add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  auto* out_opt = run->add_option("--out", out_dir, "output directory (default $ZEROLAB_OUTPUT_DIR or ./zerolab_out)");
  run->add_flag("--allow-suspect", allow_suspect, "exit 0 even when quadrature refinement is suspect");

  std::string file_a, file_b, diff_out;
  double rel_tol = 0.0;
  auto* cmp = app.add_subcommand("compare", "compare two results.csv files");
  cmp->add_option("a", file_a, "first results.csv")->required()->check(CLI::ExistingFile);
  cmp->add_option("b", file_b, "second results.csv")->required()->check(CLI::ExistingFile);
  cmp->add_option("--tolerance", rel_tol, "ignore relative deviations up to this value");
  cmp->add_option("--out", diff_out, "write the machine-readable diff here");

  auto* fam = app.add_subcommand("list-families", "list built-in test form families");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      zerolab::ExperimentConfig cfg = zerolab::load_config(config_path);
      if (*seed_opt) cfg.master_seed = seed;
      if (!*out_opt) out_dir = cfg.output.empty() ? default_out_dir() : cfg.output;
      zerolab::RunResult res;
      const int status = zerolab::run_to_directory(cfg, out_dir, {threads, allow_suspect}, &res);
      std::cout << "wrote " << out_dir << "/results.csv (" << zerolab::experiment_name(cfg.experiment)
                << ", config " << zerolab::config_hash(cfg) << ")\n";
      if (res.discarded) std::cout << "discarded trials: " << res.discarded << "\n";
      if (res.suspect) std::cerr << "suspect quadrature events: " << res.suspect << "\n";
      return status;
    }
    if (*cmp) {
      const auto rep = zerolab::compare_results(zerolab::read_csv(file_a), zerolab::read_csv(file_b), rel_tol);
      std::cout << rep.to_text();
      if (!diff_out.empty()) std::ofstream(diff_out) << rep.to_csv();
      return rep.diffs.empty() ? 0 : 1;
    }
    if (*fam) {
      for (const auto& f : zerolab::list_families()) {
        std::cout << f.name << "  m=";
        for (std::size_t i = 0; i < f.dims.size(); ++i) std::cout << (i ? "," : "") << f.dims[i];
        std::cout << "  params: " << f.params << "\n    " << f.description << "\n";
      }
      return 0;
    }
  } catch (const zerolab::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
