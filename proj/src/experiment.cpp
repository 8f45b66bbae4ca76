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

#include "zerolab/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "zerolab/analysis.hpp"
#include "zerolab/bipotential.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/kernel.hpp"
#include "zerolab/monte_carlo.hpp"
#include "zerolab/simd/kernels.hpp"
#include "zerolab/test_forms.hpp"

namespace zerolab {

using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::pair<ExperimentKind, const char*>> kNames = {
    {ExperimentKind::mean, "mean"},
    {ExperimentKind::variance_mc, "variance_mc"},
    {ExperimentKind::variance_quad, "variance_quad"},
    {ExperimentKind::counting, "counting"},
    {ExperimentKind::normality, "normality"},
    {ExperimentKind::constants, "constants"},
    {ExperimentKind::bmk, "bmk"},
    {ExperimentKind::kernel_checks, "kernel_checks"},
};

int line_of(const std::string* text, const std::string& key) {
  if (!text) return 0;
  const std::size_t pos = text->find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text->begin(), text->begin() + pos, '\n'));
}

[[noreturn]] void fail(const std::string* text, const std::string& key, const std::string& msg) {
  const int line = line_of(text, key);
  throw ConfigError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + key + ": " + msg);
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string form_id(const FormSpec& f) {
  std::string s = f.family;
  for (const auto& [k, v] : f.params) s += ":" + k + "=" + fmt(v);
  return s;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : width_(header.size()) { line(header); }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw Error("csv row width mismatch");
    line(cells);
  }
  std::string str() const { return out_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::size_t width_;
  std::ostringstream out_;
};

json form_to_json(const FormSpec& f) {
  json p = json::object();
  for (const auto& [k, v] : f.params) p[k] = v;
  return {{"family", f.family}, {"params", p}};
}

FormSpec form_from_json(const json& j, const std::string* text) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    fail(text, "family", "each test form needs a string \"family\"");
  FormSpec f;
  f.family = j["family"].get<std::string>();
  if (j.contains("params")) {
    if (!j["params"].is_object()) fail(text, "params", "must be an object of numbers");
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number()) fail(text, k, "form parameters must be numbers");
      f.params[k] = v.get<double>();
    }
  }
  return f;
}

CapSpec cap_from_json(const json& j, const std::string* text) {
  if (!j.is_object() || !j.contains("radius") || !j["radius"].is_number())
    fail(text, "radius", "each cap needs a numeric \"radius\"");
  CapSpec c;
  c.radius = j["radius"].get<double>();
  if (j.contains("cos_theta")) c.cos_theta = j["cos_theta"].get<double>();
  if (j.contains("azimuth")) c.azimuth = j["azimuth"].get<double>();
  return c;
}

void validate(const ExperimentConfig& c, const std::string* text) {
  using E = ExperimentKind;
  if (c.m < 1 || c.m > kMaxDim) fail(text, "m", "must be 1, 2 or 3 (got " + std::to_string(c.m) + ")");
  const bool uses_degree = c.experiment != E::constants && c.experiment != E::bmk;
  if (uses_degree && c.N_list.empty()) fail(text, "N", "at least one degree is required");
  const bool mc = c.experiment == E::mean || c.experiment == E::variance_mc || c.experiment == E::normality ||
                  c.experiment == E::counting;
  // Sampling is capped by the ensemble; kernel-only experiments are not.
  const int n_max = mc ? max_degree(c.m) : 1000000;
  for (int N : uses_degree ? c.N_list : std::vector<int>{})
    if (N < 1 || N > n_max)
      fail(text, c.N_list.size() == 1 ? "N" : "N_list",
           "degree " + std::to_string(N) + " outside 1.." + std::to_string(n_max));
  if (mc && c.trials < 8) fail(text, "trials", "at least 8 trials are required");
  if (c.experiment == E::normality && c.trials < 100) fail(text, "trials", "normality needs at least 100 trials");
  if (c.route != "roots" && c.route != "pl") fail(text, "route", "must be \"roots\" or \"pl\"");
  if (c.route == "roots" && c.m != 1 && mc && c.experiment != E::counting)
    fail(text, "route", "the root route needs m = 1");
  if (c.grid_resolution < 4) fail(text, "grid_resolution", "must be at least 4");
  const bool needs_forms = c.experiment == E::mean || c.experiment == E::variance_mc ||
                           c.experiment == E::variance_quad || c.experiment == E::normality;
  if (needs_forms && c.forms.empty()) fail(text, "phi", "this experiment needs a test form");
  for (const FormSpec& f : c.forms) {
    try {
      make_test_form(c.m, f.family, f.params);
    } catch (const Error& e) {
      fail(text, "family", std::string("invalid test form ") + form_id(f) + ": " + e.what());
    }
  }
  if (c.experiment == E::counting) {
    if (c.m != 1) fail(text, "m", "counting is implemented for m = 1");
    if (c.caps.empty()) fail(text, "cap", "counting needs a cap");
    for (const CapSpec& cap : c.caps)
      if (!(cap.radius > 0.0 && cap.radius < kPi / 2)) fail(text, "radius", "cap radius must lie in (0, pi/2)");
  }
  if (c.experiment == E::variance_quad && c.m > 2) fail(text, "m", "variance_quad supports m = 1, 2");
  if (c.experiment == E::bmk && (c.k < 1 || c.k > c.m)) fail(text, "k", "need 1 <= k <= m");
  if (c.tolerances.pl <= 0 || c.tolerances.quad_suspect <= 0 || c.tolerances.bmk <= 0)
    fail(text, "tolerances", "tolerances must be positive");
}

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<TestForm> build_forms(const ExperimentConfig& c) {
  std::vector<TestForm> out;
  for (const FormSpec& f : c.forms) out.push_back(make_test_form(c.m, f.family, f.params));
  return out;
}

// ---- experiment bodies ----

struct Body {
  std::string csv;
  std::string trials;
  int discarded = 0;
  int suspect = 0;
  json extra = json::object();
};

const std::vector<std::string> kTrialsHeader = {"trial_index", "seed", "N", "statistic_value",
                                                "route",       "residual", "flags", "phi"};

void add_trials(CsvWriter& w, const SmoothSamples& s, const ExperimentConfig& c) {
  for (std::size_t f = 0; f < s.records.size(); ++f)
    for (const TrialRecord& r : s.records[f])
      w.row({std::to_string(r.trial_index), std::to_string(r.seed), std::to_string(r.N), fmt(r.value), r.route,
             fmt(r.residual), flags_to_string(r.flags), form_id(c.forms[f])});
}

SmoothSamples run_smooth(const ExperimentConfig& c, int N, const RunOptions& opt) {
  SmoothConfig sc;
  sc.N = N;
  sc.m = c.m;
  sc.forms = build_forms(c);
  sc.route = c.route == "roots" ? Route::roots : Route::pl;
  sc.trials = c.trials;
  sc.grid_resolution = c.grid_resolution;
  sc.refine = c.pl_refine;
  sc.pl_tolerance = c.tolerances.pl;
  sc.master_seed = c.master_seed;
  sc.threads = opt.threads;
  return smooth_samples(sc);
}

Body smooth_body(const ExperimentConfig& c, const RunOptions& opt) {
  using E = ExperimentKind;
  const std::string hash = config_hash(c), seed = std::to_string(c.master_seed);
  std::vector<std::string> header;
  if (c.experiment == E::mean)
    header = {"experiment", "m", "N", "phi", "route", "trials", "mean", "stderr_mean", "expected", "z_score",
              "discarded", "flagged", "master_seed", "config_hash"};
  else if (c.experiment == E::variance_mc)
    header = {"experiment", "m", "N", "phi", "route", "trials", "mean", "stderr_mean", "variance",
              "stderr_variance", "discarded", "flagged", "master_seed", "config_hash"};
  else
    header = {"experiment", "m", "N", "phi", "route", "trials", "ks_distance", "skewness", "excess_kurtosis",
              "discarded", "flagged", "master_seed", "config_hash"};
  CsvWriter w(header), trials(kTrialsHeader);
  Body b;
  const std::vector<TestForm> forms = build_forms(c);
  for (int N : c.N_list) {
    const SmoothSamples s = run_smooth(c, N, opt);
    b.discarded += s.discarded;
    b.suspect += s.flagged;
    if (c.write_trials) add_trials(trials, s, c);
    for (std::size_t f = 0; f < forms.size(); ++f) {
      std::vector<std::string> row = {experiment_name(c.experiment), std::to_string(c.m), std::to_string(N),
                                      form_id(c.forms[f]), c.route, std::to_string(c.trials)};
      if (c.experiment == E::normality) {
        const NormalityReport r = normality_test(s.sets[f]);
        row.insert(row.end(), {fmt(r.ks_distance), fmt(r.skewness), fmt(r.excess_kurtosis)});
      } else {
        const Estimate e = mc_estimate(s.sets[f]);
        row.insert(row.end(), {fmt(e.mean), fmt(e.stderr_mean)});
        if (c.experiment == E::mean) {
          const double expected = N * forms[f].omega_pairing / kPi;
          const double z = e.stderr_mean > 0 ? (e.mean - expected) / e.stderr_mean : 0.0;
          row.insert(row.end(), {fmt(expected), fmt(z)});
        } else {
          row.insert(row.end(), {fmt(e.variance), fmt(e.stderr_variance)});
        }
      }
      row.insert(row.end(), {std::to_string(s.discarded), std::to_string(s.flagged), seed, hash});
      w.row(row);
    }
  }
  b.csv = w.str();
  if (c.write_trials) b.trials = trials.str();
  return b;
}

Body variance_quad_body(const ExperimentConfig& c, const RunOptions& opt) {
  CsvWriter w({"experiment", "m", "N", "phi", "variance", "near", "far", "refined_variance", "suspect", "limit",
               "scaled_ratio", "master_seed", "config_hash"});
  const std::string hash = config_hash(c), seed = std::to_string(c.master_seed);
  const std::vector<TestForm> forms = build_forms(c);
  Body b;
  VarianceQuadOptions vo;
  vo.threads = opt.threads;
  vo.suspect_tolerance = c.tolerances.quad_suspect;
  if (c.m == 2) {
    // The near field costs angular^3 points per node on CP^2.
    vo.outer_resolution = 4;
    vo.angular_points = 6;
  }
  const QuadratureGrid grid = build_grid(c.m, vo.outer_resolution, GridKind::product_gauss);
  for (int N : c.N_list) {
    const KernelContext ctx = make_kernel_context(N, c.m);
    for (std::size_t f = 0; f < forms.size(); ++f) {
      const VarianceQuadResult r = variance_quadrature(ctx, forms[f], grid, vo);
      if (r.suspect) ++b.suspect;
      double limit = std::numeric_limits<double>::quiet_NaN(), ratio = limit;
      if (c.m == 1) {
        limit = smooth_variance_limit(forms[f], N);
        ratio = limit > 0 ? r.value / limit : limit;
      }
      w.row({"variance_quad", std::to_string(c.m), std::to_string(N), form_id(c.forms[f]), fmt(r.value),
             fmt(r.near), fmt(r.far), fmt(r.refined_value), r.suspect ? "1" : "0", fmt(limit), fmt(ratio), seed,
             hash});
    }
  }
  b.csv = w.str();
  return b;
}

Body counting_body(const ExperimentConfig& c, const RunOptions& opt) {
  CsvWriter w({"experiment", "N", "radius", "cos_theta", "azimuth", "trials", "mean", "expected_mean", "variance",
               "stderr_variance", "complement_variance", "complement_stderr", "prediction", "ratio",
               "ratio_stderr", "discarded", "master_seed", "config_hash"});
  const std::string hash = config_hash(c), seed = std::to_string(c.master_seed);
  std::vector<CapRegion> caps;
  for (const CapSpec& s : c.caps) caps.emplace_back(from_sphere(s.cos_theta, s.azimuth), s.radius);
  const double nu = leading_constants(1).nu_m1;
  Body b;
  CsvWriter trials(kTrialsHeader);
  for (int N : c.N_list) {
    const CountingSamples cs = counting_samples(N, caps, c.trials, c.master_seed, opt.threads);
    b.discarded += cs.discarded;
    if (c.write_trials) {
      for (const TrialRecord& r : cs.records)
        trials.row({std::to_string(r.trial_index), std::to_string(r.seed), std::to_string(N), fmt(r.value), r.route,
               fmt(r.residual), flags_to_string(r.flags), "cap0"});
    }
    for (std::size_t i = 0; i < caps.size(); ++i) {
      const Estimate e = mc_estimate(cs.inside[i]), ec = mc_estimate(cs.complement[i]);
      const double pred = std::sqrt(static_cast<double>(N)) * nu * cap_boundary_length(caps[i]);
      w.row({"counting", std::to_string(N), fmt(c.caps[i].radius), fmt(c.caps[i].cos_theta),
             fmt(c.caps[i].azimuth), std::to_string(c.trials), fmt(e.mean), fmt(N * cap_area(caps[i]) / kPi),
             fmt(e.variance), fmt(e.stderr_variance), fmt(ec.variance), fmt(ec.stderr_variance), fmt(pred),
             fmt(e.variance / pred), fmt(e.stderr_variance / pred), std::to_string(cs.discarded), seed, hash});
    }
  }
  b.csv = w.str();
  if (c.write_trials) b.trials = trials.str();
  return b;
}

Body constants_body(const ExperimentConfig& c) {
  CsvWriter w({"experiment", "m", "name", "value", "master_seed", "config_hash"});
  const std::string hash = config_hash(c), seed = std::to_string(c.master_seed), ms = std::to_string(c.m);
  const LeadingConstants lc = leading_constants(c.m);
  w.row({"constants", ms, "smooth_constant", fmt(lc.smooth_constant), seed, hash});
  w.row({"constants", ms, "kappa_m", fmt(lc.kappa_m), seed, hash});
  w.row({"constants", ms, "nu_m1", fmt(lc.nu_m1), seed, hash});
  w.row({"constants", ms, "universal_integral", fmt(universal_integral(c.m)), seed, hash});
  Body b;
  b.csv = w.str();
  return b;
}

Body bmk_body(const ExperimentConfig& c) {
  CsvWriter w({"experiment", "m", "k", "kind", "index_a", "index_b", "label_a", "label_b", "re", "im",
               "master_seed", "config_hash"});
  const std::string hash = config_hash(c), seed = std::to_string(c.master_seed);
  BmkOptions bo;
  bo.tolerance = std::numeric_limits<double>::infinity();  // judged below
  const HermitianFormMatrix B = bmk_form(c.m, c.k, bo);
  Body b;
  if (B.refinement_change > c.tolerances.bmk) ++b.suspect;
  const std::string ms = std::to_string(c.m), ks = std::to_string(c.k);
  for (std::size_t r = 0; r < B.size(); ++r)
    for (std::size_t q = 0; q < B.size(); ++q)
      w.row({"bmk", ms, ks, "entry", std::to_string(r), std::to_string(q), bmk_basis_label(B, r),
             bmk_basis_label(B, q), fmt(B.at(r, q).real()), fmt(B.at(r, q).imag()), seed, hash});
  for (std::size_t i = 0; i < B.eigenvalues.size(); ++i)
    w.row({"bmk", ms, ks, "eigenvalue", std::to_string(i), "", "", "", fmt(B.eigenvalues[i]), "0", seed, hash});
  b.csv = w.str();
  json order = json::array();
  for (std::size_t i = 0; i < B.size(); ++i) order.push_back(bmk_basis_label(B, i));
  b.extra["basis_order"] = order;
  b.extra["refinement_change"] = B.refinement_change;
  b.extra["hermitian_defect"] = B.hermitian_defect();
  return b;
}

Body kernel_body(const ExperimentConfig& c) {
  CsvWriter w({"experiment", "m", "N", "check", "parameter", "value", "master_seed", "config_hash"});
  const std::string hash = config_hash(c), seed = std::to_string(c.master_seed), ms = std::to_string(c.m);
  const int n = static_cast<int>(std::min<std::size_t>(c.trials, 100000));
  for (int N : c.N_list) {
    const KernelContext ctx = make_kernel_context(N, c.m);
    for (double bb : {2.0, 3.0})
      w.row({"kernel_checks", ms, std::to_string(N), "far_decay", fmt(bb),
             fmt(far_decay_report(ctx, bb, n, c.master_seed)), seed, hash});
    const RemainderReport rr = remainder_report(ctx, 3.0, n, 0.1, c.master_seed);
    w.row({"kernel_checks", ms, std::to_string(N), "remainder_ratio", "3", fmt(rr.max_ratio), seed, hash});
    w.row({"kernel_checks", ms, std::to_string(N), "remainder_abs", "3", fmt(rr.max_abs), seed, hash});
    const BipotentialConstantReport bc = bipotential_constant_report(ctx, std::min(n, 200), c.master_seed);
    w.row({"kernel_checks", ms, std::to_string(N), "bipotential_constant", fmt(bc.at_distance), fmt(bc.constant),
           seed, hash});
  }
  Body b;
  b.csv = w.str();
  return b;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

json config_json(const ExperimentConfig& c, bool with_output) {
  json j;
  j["experiment"] = experiment_name(c.experiment);
  j["m"] = c.m;
  j["k"] = c.k;
  j["N_list"] = c.N_list;
  j["trials"] = c.trials;
  j["forms"] = json::array();
  for (const FormSpec& f : c.forms) j["forms"].push_back(form_to_json(f));
  j["route"] = c.route;
  j["caps"] = json::array();
  for (const CapSpec& cap : c.caps)
    j["caps"].push_back({{"radius", cap.radius}, {"cos_theta", cap.cos_theta}, {"azimuth", cap.azimuth}});
  j["grid_resolution"] = c.grid_resolution;
  j["pl_refine"] = c.pl_refine;
  j["master_seed"] = c.master_seed;
  j["write_trials"] = c.write_trials;
  j["tolerances"] = {{"pl", c.tolerances.pl}, {"quad_suspect", c.tolerances.quad_suspect}, {"bmk", c.tolerances.bmk}};
  if (with_output) j["output"] = c.output;
  return j;
}

bool parse_double(const std::string& s, double& x) {
  if (s.empty()) return false;
  char* end = nullptr;
  x = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

const char* experiment_name(ExperimentKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

ExperimentKind parse_experiment(const std::string& s) {
  for (const auto& [kind, name] : kNames)
    if (s == name) return kind;
  throw ConfigError("unknown experiment \"" + s + "\"");
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
    throw ConfigError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw ConfigError("line 1: the config must be a JSON object");
  static const std::set<std::string> known = {
      "experiment", "m",     "k",          "N",           "N_list", "trials",       "phi",
      "forms",      "route", "cap",        "caps",        "grid_resolution",      "pl_refine",
      "master_seed", "output", "write_trials", "tolerances"};
  const std::string* t = &text;
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) fail(t, key, "unknown key");

  ExperimentConfig c;
  auto get_int = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) fail(t, key, "must be an integer");
    dst = j[key].get<std::remove_reference_t<decltype(dst)>>();
  };
  if (!j.contains("experiment") || !j["experiment"].is_string()) fail(t, "experiment", "a string is required");
  try {
    c.experiment = parse_experiment(j["experiment"].get<std::string>());
  } catch (const ConfigError&) {
    fail(t, "experiment", "unknown experiment \"" + j["experiment"].get<std::string>() + "\"");
  }
  get_int("m", c.m);
  get_int("k", c.k);
  if (j.contains("N") && j.contains("N_list")) fail(t, "N_list", "give either N or N_list");
  if (j.contains("N")) {
    int n = 0;
    get_int("N", n);
    c.N_list = {n};
  }
  if (j.contains("N_list")) {
    if (!j["N_list"].is_array()) fail(t, "N_list", "must be an array of integers");
    c.N_list.clear();
    for (const json& v : j["N_list"]) {
      if (!v.is_number_integer()) fail(t, "N_list", "must be an array of integers");
      c.N_list.push_back(v.get<int>());
    }
  }
  if (j.contains("trials")) {
    if (!j["trials"].is_number_integer() || j["trials"].get<long long>() < 0)
      fail(t, "trials", "must be a nonnegative integer");
    c.trials = j["trials"].get<std::size_t>();
  }
  if (j.contains("phi") && j.contains("forms")) fail(t, "forms", "give either phi or forms");
  if (j.contains("phi")) c.forms = {form_from_json(j["phi"], t)};
  if (j.contains("forms")) {
    if (!j["forms"].is_array()) fail(t, "forms", "must be an array");
    for (const json& f : j["forms"]) c.forms.push_back(form_from_json(f, t));
  }
  if (j.contains("route")) {
    if (!j["route"].is_string()) fail(t, "route", "must be a string");
    c.route = j["route"].get<std::string>();
  }
  if (j.contains("cap") && j.contains("caps")) fail(t, "caps", "give either cap or caps");
  if (j.contains("cap")) c.caps = {cap_from_json(j["cap"], t)};
  if (j.contains("caps")) {
    if (!j["caps"].is_array()) fail(t, "caps", "must be an array");
    for (const json& v : j["caps"]) c.caps.push_back(cap_from_json(v, t));
  }
  get_int("grid_resolution", c.grid_resolution);
  if (j.contains("pl_refine")) {
    if (!j["pl_refine"].is_boolean()) fail(t, "pl_refine", "must be a boolean");
    c.pl_refine = j["pl_refine"].get<bool>();
  }
  if (j.contains("master_seed")) {
    if (!j["master_seed"].is_number_unsigned()) fail(t, "master_seed", "must be a nonnegative integer");
    c.master_seed = j["master_seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) fail(t, "output", "must be a string");
    c.output = j["output"].get<std::string>();
  }
  if (j.contains("write_trials")) {
    if (!j["write_trials"].is_boolean()) fail(t, "write_trials", "must be a boolean");
    c.write_trials = j["write_trials"].get<bool>();
  }
  if (j.contains("tolerances")) {
    const json& tol = j["tolerances"];
    if (!tol.is_object()) fail(t, "tolerances", "must be an object");
    for (const auto& [key, v] : tol.items()) {
      if (!v.is_number()) fail(t, key, "tolerance must be a number");
      if (key == "pl")
        c.tolerances.pl = v.get<double>();
      else if (key == "quad_suspect")
        c.tolerances.quad_suspect = v.get<double>();
      else if (key == "bmk")
        c.tolerances.bmk = v.get<double>();
      else
        fail(t, key, "unknown tolerance");
    }
  }
  validate(c, t);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg, true).dump(2); }

void validate_config(const ExperimentConfig& cfg) { validate(cfg, nullptr); }

std::string config_hash(const ExperimentConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(config_json(cfg, false).dump())));
  return buf;
}

RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  using E = ExperimentKind;
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const std::string started = iso_now();
  Body b;
  switch (cfg.experiment) {
    case E::mean:
    case E::variance_mc:
    case E::normality:
      b = smooth_body(cfg, opt);
      break;
    case E::variance_quad:
      b = variance_quad_body(cfg, opt);
      break;
    case E::counting:
      b = counting_body(cfg, opt);
      break;
    case E::constants:
      b = constants_body(cfg);
      break;
    case E::bmk:
      b = bmk_body(cfg);
      break;
    case E::kernel_checks:
      b = kernel_body(cfg);
      break;
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json man;
  man["config_hash"] = config_hash(cfg);
  man["master_seed"] = cfg.master_seed;
  man["experiment"] = experiment_name(cfg.experiment);
  man["started_at"] = started;
  man["duration_s"] = dt;
  man["discarded_trials"] = b.discarded;
  man["suspect_events"] = b.suspect;
  man["threads"] = opt.threads;
  man["versions"] = {{"zerolab", kVersion},
                     {"compiler", __VERSION__},
                     {"simd", simd::isa_name(simd::active_isa())},
                     {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  man["config"] = config_json(cfg, true);
  for (const auto& [k, v] : b.extra.items()) man[k] = v;

  RunResult r;
  r.results_csv = std::move(b.csv);
  r.trials_csv = std::move(b.trials);
  r.manifest_json = man.dump(2) + "\n";
  r.discarded = b.discarded;
  r.suspect = b.suspect;
  return r;
}

int run_to_directory(const ExperimentConfig& cfg, const std::string& out_dir, const RunOptions& opt,
                     RunResult* result) {
  RunResult r = run_experiment(cfg, opt);
  std::filesystem::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& data) {
    std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary);
    if (!f) throw Error("cannot write " + out_dir + "/" + name);
    f << data;
  };
  write("results.csv", r.results_csv);
  write("manifest.json", r.manifest_json);
  if (cfg.write_trials) write("trials.csv", r.trials_csv);
  const int status = (r.suspect > 0 && !opt.allow_suspect) ? 3 : 0;
  if (result) *result = std::move(r);
  return status;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

CompareReport compare_results(const CsvTable& a, const CsvTable& b, double rel_tol) {
  CompareReport rep;
  if (a.header == b.header) {
    const std::size_t n = std::max(a.rows.size(), b.rows.size());
    for (std::size_t r = 0; r < n; ++r) {
      if (r >= a.rows.size() || r >= b.rows.size()) {
        rep.diffs.push_back({r, "<row>", r < a.rows.size() ? "present" : "missing",
                             r < b.rows.size() ? "present" : "missing", std::numeric_limits<double>::infinity()});
        continue;
      }
      for (std::size_t col = 0; col < a.header.size(); ++col) {
        const std::string& x = a.rows[r][col];
        const std::string& y = b.rows[r][col];
        if (x == y) continue;
        double dx, dy, rel = std::numeric_limits<double>::infinity();
        if (parse_double(x, dx) && parse_double(y, dy))
          rel = std::abs(dx - dy) / std::max({std::abs(dx), std::abs(dy), 1e-300});
        if (rel > rel_tol) rep.diffs.push_back({r, a.header[col], x, y, rel});
      }
    }
    return rep;
  }
  auto col = [](const CsvTable& t, const std::string& name) -> std::size_t {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw SchemaMismatch("missing column " + name);
    return static_cast<std::size_t>(it - t.header.begin());
  };
  auto kind = [&](const CsvTable& t) {
    if (t.rows.empty()) throw SchemaMismatch("empty result table");
    return t.rows[0][col(t, "experiment")];
  };
  const std::string ka = kind(a), kb = kind(b);
  const bool pair = (ka == "variance_mc" && kb == "variance_quad") || (ka == "variance_quad" && kb == "variance_mc");
  if (!pair) throw SchemaMismatch("cannot compare " + ka + " with " + kb);
  const CsvTable& mc = ka == "variance_mc" ? a : b;
  const CsvTable& qd = ka == "variance_mc" ? b : a;
  rep.joined.header = {"N", "phi", "variance_mc", "stderr_variance_mc", "variance_quad", "ratio"};
  for (const auto& rm : mc.rows)
    for (const auto& rq : qd.rows) {
      if (rm[col(mc, "N")] != rq[col(qd, "N")] || rm[col(mc, "phi")] != rq[col(qd, "phi")]) continue;
      double vm = 0, vq = 0;
      parse_double(rm[col(mc, "variance")], vm);
      parse_double(rq[col(qd, "variance")], vq);
      rep.joined.rows.push_back({rm[col(mc, "N")], rm[col(mc, "phi")], rm[col(mc, "variance")],
                                 rm[col(mc, "stderr_variance")], rq[col(qd, "variance")], fmt(vm / vq)});
    }
  return rep;
}

std::string CompareReport::to_text() const {
  std::ostringstream o;
  if (empty()) {
    o << "no differences\n";
    return o.str();
  }
  for (const Cell& c : diffs)
    o << "row " << c.row << " column " << c.column << ": " << c.a << " vs " << c.b << " (rel " << fmt(c.rel_dev)
      << ")\n";
  if (!joined.rows.empty()) {
    o << "N  phi  variance_mc  variance_quad  ratio\n";
    for (const auto& r : joined.rows) o << r[0] << "  " << r[1] << "  " << r[2] << "  " << r[4] << "  " << r[5] << "\n";
  }
  return o.str();
}

std::string CompareReport::to_csv() const {
  if (!joined.rows.empty()) {
    CsvWriter w(joined.header);
    for (const auto& r : joined.rows) w.row(r);
    return w.str();
  }
  CsvWriter w({"row", "column", "a", "b", "rel_dev"});
  for (const Cell& c : diffs) w.row({std::to_string(c.row), c.column, c.a, c.b, fmt(c.rel_dev)});
  return w.str();
}

std::string section_to_json(const Section& s) {
  json j;
  j["degree"] = s.degree;
  j["dim_m"] = s.dim_m;
  j["seed"] = s.seed;
  j["coeffs"] = json::array();
  for (const cplx& c : s.coeffs) j["coeffs"].push_back({c.real(), c.imag()});
  return j.dump();
}

Section section_from_json(const std::string& text) {
  const json j = json::parse(text);
  Section s;
  s.degree = j.at("degree").get<int>();
  s.dim_m = j.at("dim_m").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  for (const json& c : j.at("coeffs")) s.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  if (s.coeffs.size() != section_dimension(s.degree, s.dim_m)) throw SchemaMismatch("section record has wrong size");
  return s;
}

}  // namespace zerolab
