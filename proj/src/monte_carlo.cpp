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

#include "zerolab/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>

#include "zerolab/ensemble.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/parallel.hpp"
#include "zerolab/roots.hpp"

namespace zerolab {

namespace {

constexpr std::uint32_t kMaxAttempts = 16;

}  // namespace

const char* route_name(Route r) { return r == Route::roots ? "roots" : "pl"; }

int discard_budget(std::size_t n) { return std::max(1, static_cast<int>(1e-4 * static_cast<double>(n))); }

int run_trials(std::size_t n, std::uint64_t master_seed, int threads,
               const std::function<void(std::size_t, RngStream&)>& trial) {
  std::atomic<int> discarded{0};
  const int budget = discard_budget(n);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::uint32_t a = 0; a < kMaxAttempts; ++a) {
      RngStream rng(master_seed, i, a);
      try {
        trial(i, rng);
        return;
      } catch (const ConvergenceFailure&) {
        if (++discarded > budget) throw TooManyFailures("discarded trials exceed the failure budget");
      }
    }
    throw TooManyFailures("trial failed on every attempt");
  });
  return discarded.load();
}

SmoothSamples smooth_samples(const SmoothConfig& cfg) {
  if (cfg.forms.empty()) throw ConfigError("smooth_samples needs at least one test form");
  if (cfg.route == Route::roots && cfg.m != 1) throw UnsupportedDimension("the root route needs m = 1");
  const std::size_t nf = cfg.forms.size(), n = cfg.trials;

  std::optional<PLRoute> pl;
  if (cfg.route == Route::pl) {
    const QuadratureGrid g = build_grid(cfg.m, cfg.grid_resolution, cfg.grid_kind, cfg.master_seed);
    std::optional<QuadratureGrid> fine;
    if (cfg.refine)
      fine = build_grid(cfg.m, cfg.grid_resolution + cfg.grid_resolution / 2, cfg.grid_kind, cfg.master_seed + 1);
    double sup = 0.0;
    for (const TestForm& f : cfg.forms) sup = std::max(sup, f.sup_norm);
    pl.emplace(cfg.N, g, cfg.forms, std::move(fine), cfg.pl_tolerance * sup);
  }

  SmoothSamples out;
  out.records.assign(nf, std::vector<TrialRecord>(n));
  const int discarded = run_trials(n, cfg.master_seed, cfg.threads, [&](std::size_t i, RngStream& rng) {
    const Section s = sample_section(cfg.N, cfg.m, rng);
    std::vector<double> vals(nf);
    double residual = 0.0;
    unsigned flags = kFlagNone;
    if (cfg.route == Route::roots) {
      const ZeroSet z = find_roots(s);
      residual = z.residual;
      for (std::size_t f = 0; f < nf; ++f) vals[f] = linear_stat_roots(z, cfg.forms[f]);
    } else {
      const std::vector<PLValue> v = pl->evaluate(s);
      for (std::size_t f = 0; f < nf; ++f) {
        vals[f] = v[f].value;
        flags |= v[f].flags;
        residual = std::max(residual, std::abs(v[f].refined_value - v[f].value));
      }
    }
    for (std::size_t f = 0; f < nf; ++f)
      out.records[f][i] = {i, rng.substream_id(), cfg.N, vals[f], route_name(cfg.route), residual, flags};
  });

  out.discarded = discarded;
  for (std::size_t f = 0; f < nf; ++f) {
    SampleSet set;
    set.meta = {cfg.N, cfg.m, cfg.forms[f].family, route_name(cfg.route)};
    set.discarded = discarded;
    for (const TrialRecord& r : out.records[f]) {
      set.values.push_back(r.value);
      set.seeds.push_back(r.seed);
    }
    out.sets.push_back(std::move(set));
  }
  for (const TrialRecord& r : out.records[0])
    if (r.flags & kFlagQuadratureSuspect) ++out.flagged;
  return out;
}

RouteComparison compare_routes(int N, const TestForm& phi, std::size_t trials, int grid_resolution,
                               std::uint64_t master_seed, int threads, double pl_tolerance) {
  if (phi.dim_m != 1) throw UnsupportedDimension("route comparison needs m = 1");
  const QuadratureGrid g = build_grid(1, grid_resolution, GridKind::product_gauss);
  const QuadratureGrid fine = build_grid(1, grid_resolution + grid_resolution / 2, GridKind::product_gauss);
  const PLRoute pl(N, g, {phi}, fine, pl_tolerance * phi.sup_norm);

  RouteComparison rc;
  rc.root_values.resize(trials);
  rc.pl_values.resize(trials);
  rc.flags.resize(trials);
  rc.discarded = run_trials(trials, master_seed, threads, [&](std::size_t i, RngStream& rng) {
    const Section s = sample_section(N, 1, rng);
    const ZeroSet z = find_roots(s);
    const PLValue v = pl.evaluate(s)[0];
    rc.root_values[i] = linear_stat_roots(z, phi);
    rc.pl_values[i] = v.value;
    rc.flags[i] = v.flags;
  });
  for (std::size_t i = 0; i < trials; ++i) {
    if (rc.flags[i] != kFlagNone) {
      ++rc.flagged;
      continue;
    }
    rc.max_abs_diff_unflagged = std::max(rc.max_abs_diff_unflagged, std::abs(rc.root_values[i] - rc.pl_values[i]));
  }
  return rc;
}

CountingSamples counting_samples(int N, const std::vector<CapRegion>& caps, std::size_t trials,
                                 std::uint64_t master_seed, int threads) {
  if (caps.empty()) throw ConfigError("counting_samples needs at least one cap");
  for (const CapRegion& c : caps)
    if (c.center.dim() != 1) throw UnsupportedDimension("counting needs m = 1");
  const std::size_t nc = caps.size();
  std::vector<std::vector<double>> in(nc, std::vector<double>(trials)), out_(nc, std::vector<double>(trials));
  CountingSamples cs;
  cs.records.resize(trials);
  cs.discarded = run_trials(trials, master_seed, threads, [&](std::size_t i, RngStream& rng) {
    const Section s = sample_section(N, 1, rng);
    const ZeroSet z = find_roots(s);
    for (std::size_t c = 0; c < nc; ++c) {
      int inside = 0, outside = 0;
      for (std::size_t r = 0; r < z.roots.size(); ++r) {
        const double d = fs_distance(caps[c].center, z.roots[r]);
        if (d < caps[c].radius) inside += z.multiplicity[r];
        if (d > caps[c].radius) outside += z.multiplicity[r];
      }
      in[c][i] = inside;
      out_[c][i] = outside;
    }
    cs.records[i] = {i, rng.substream_id(), N, in[0][i], "roots", z.residual, kFlagNone};
  });
  for (std::size_t c = 0; c < nc; ++c) {
    SampleSet a, b;
    a.meta = {N, 1, "cap", "roots"};
    b.meta = {N, 1, "cap_complement", "roots"};
    a.values = std::move(in[c]);
    b.values = std::move(out_[c]);
    for (const TrialRecord& r : cs.records) {
      a.seeds.push_back(r.seed);
      b.seeds.push_back(r.seed);
    }
    a.discarded = b.discarded = cs.discarded;
    cs.inside.push_back(std::move(a));
    cs.complement.push_back(std::move(b));
  }
  return cs;
}

std::vector<CountingRow> counting_variance_experiment(const std::vector<int>& N_list, const CapRegion& cap,
                                                      std::size_t trials, std::uint64_t master_seed,
                                                      int threads) {
  const double nu = leading_constants(1).nu_m1;
  const double boundary = cap_boundary_length(cap);
  std::vector<CountingRow> rows;
  for (int N : N_list) {
    const CountingSamples cs = counting_samples(N, {cap}, trials, master_seed, threads);
    const Estimate e = mc_estimate(cs.inside[0]);
    const Estimate ec = mc_estimate(cs.complement[0]);
    CountingRow r;
    r.N = N;
    r.mean = e.mean;
    r.variance = e.variance;
    r.stderr_variance = e.stderr_variance;
    r.complement_variance = ec.variance;
    r.complement_stderr = ec.stderr_variance;
    r.prediction = std::sqrt(static_cast<double>(N)) * nu * boundary;
    r.ratio = r.variance / r.prediction;
    r.ratio_stderr = r.stderr_variance / r.prediction;
    r.discarded = cs.discarded;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace zerolab
