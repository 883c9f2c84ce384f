/*
   Copyright 2026 The erwlil Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "erwlil/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "erwlil/bvn.hpp"
#include "erwlil/cli/csv.hpp"
#include "erwlil/cli/report.hpp"
#include "erwlil/duo.hpp"
#include "erwlil/errors.hpp"
#include "erwlil/erw.hpp"
#include "erwlil/lil.hpp"
#include "erwlil/replicas.hpp"
#include "erwlil/rng.hpp"
#include "erwlil/sampling.hpp"
#include "erwlil/version.hpp"

namespace erwlil::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Output directory plus the manifest being assembled for it.
class Run {
public:
    explicit Run(const ExperimentConfig& cfg) : start_(std::chrono::steady_clock::now()) {
        cfg.validate();
        fs::create_directories(cfg.out);
        dir_ = cfg.out;
        manifest_.version = kVersion;
        manifest_.schema = kOutputSchema;
        manifest_.config = cfg;
        manifest_.generator = std::string(kGeneratorId);
        manifest_.normal_transform = std::string(kNormalTransformId);
        manifest_.worker_threads = set_worker_threads(cfg.threads);
    }

    CsvWriter csv(const std::string& name, std::vector<std::string> columns) {
        return CsvWriter((dir_ / name).string(), std::move(columns));
    }

    void add(CsvWriter& w) {
        w.close();
        const fs::path p(w.path());
        manifest_.outputs.push_back({p.filename().string(), sha256_file(w.path()), w.columns(), w.rows()});
    }

    void add_text(const std::string& name, const std::string& text) {
        const fs::path p = dir_ / name;
        {
            std::ofstream out(p, std::ios::binary | std::ios::trunc);
            require(static_cast<bool>(out), "output file writable: " + p.string());
            out << text;
        }
        manifest_.outputs.push_back({name, sha256_file(p.string()), {}, 1});
    }

    ojson& diagnostics() { return manifest_.diagnostics; }

    RunOutcome finish(std::string console = {}) {
        manifest_.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_manifest(manifest_, (dir_ / kManifestName).string());
        return {manifest_, std::move(console)};
    }

private:
    std::chrono::steady_clock::time_point start_;
    fs::path dir_;
    RunManifest manifest_;
};

// JSON has no NaN; absent values are written as null.
ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::vector<double> geometric_points(double lo, double hi, int count) {
    std::vector<double> xs;
    if (count == 1) return {lo};
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) xs.push_back(i + 1 == count ? hi : lo * std::exp(step * i));
    return xs;
}

}  // namespace

KernelSpec kernel_from_config(const ExperimentConfig& c) {
    if (c.variant == "fbm") return KernelSpec::fbm(c.hurst);
    if (c.variant == "rlfbm") return KernelSpec::rlfbm(c.beta, c.gamma);
    if (c.variant == "erwdiff") return KernelSpec::erw_diff(c.p, c.p2);
    if (c.variant == "stable") return KernelSpec::stable_spectral(c.stable_alpha, c.r11);
    throw InvalidArgument("constraint violated: variant is one of fbm, rlfbm, erwdiff, stable (got '" + c.variant +
                          "')");
}

RunOutcome run_simulate(const ExperimentConfig& cfg) {
    const WalkParams params{cfg.p, cfg.q};
    params.validate();
    std::vector<std::int64_t> horizons;
    if (cfg.full_path) {
        require(static_cast<double>(cfg.horizon) * cfg.replicas <= 5e7,
                "horizon * replicas <= 5e7 rows with full_path");
        for (std::int64_t n = 1; n <= cfg.horizon; ++n) horizons.push_back(n);
    } else {
        horizons = doubling_horizons(1, cfg.horizon);
        if (horizons.back() != cfg.horizon) horizons.push_back(cfg.horizon);
    }
    Run run(cfg);
    const auto table = walk_positions(params, horizons, cfg.seed, cfg.first_replica, cfg.replicas);
    auto walk = run.csv("walk.csv", {"replica", "n", "S_n"});
    for (std::uint32_t r = 0; r < cfg.replicas; ++r) {
        for (std::size_t h = 0; h < horizons.size(); ++h) walk.row(cfg.first_replica + r, horizons[h], table[r][h]);
    }
    run.add(walk);
    if (cfg.horizon <= kExactLawMaxSteps) {
        const auto law = exact_law(params, cfg.horizon);
        auto out = run.csv("exact_law.csv", {"k", "probability"});
        for (std::size_t i = 0; i < law.pmf.size(); ++i) out.row(law.support_value(i), law.pmf[i]);
        run.add(out);
    }
    const auto m = exact_moments(params, cfg.horizon);
    auto& d = run.diagnostics();
    d["regime"] = regime_name(regime(cfg.p));
    d["exact_mean"] = m.mean;
    d["exact_variance"] = m.variance;
    return run.finish();
}

RunOutcome run_collide(const ExperimentConfig& cfg) {
    PairRunSpec spec;
    spec.pair = {{cfg.p, cfg.q}, {cfg.p2, cfg.q2}};
    spec.pair.validate();
    spec.checkpoints = cfg.checkpoints;
    if (spec.checkpoints.empty() || spec.checkpoints.back() != cfg.horizon) spec.checkpoints.push_back(cfg.horizon);
    if (cfg.horizon >= cfg.stat_grid_start) spec.stat_grid = doubling_horizons(cfg.stat_grid_start, cfg.horizon);
    spec.validate();

    Run run(cfg);
    const auto results = run_pair_replicas(spec, cfg.seed, cfg.first_replica, cfg.replicas);
    auto out = run.csv("collide.csv", {"replica", "horizon", "count", "last_collision", "stat_plus", "stat_minus"});
    for (std::uint32_t r = 0; r < cfg.replicas; ++r) {
        for (const auto& c : results[r]) {
            out.row(cfg.first_replica + r, c.horizon, c.count, c.last_collision, c.stat_plus, c.stat_minus);
        }
    }
    run.add(out);
    auto& d = run.diagnostics();
    const DistanceScale scale = distance_scale(spec.pair);
    d["distance_scale"] = distance_scale_name(scale);
    d["regime_first"] = regime_name(regime(cfg.p));
    d["regime_second"] = regime_name(regime(cfg.p2));
    d["stat_grid_first"] = spec.stat_grid.empty() ? ojson(nullptr) : ojson(spec.stat_grid.front());
    d["stat_grid_last"] = spec.stat_grid.empty() ? ojson(nullptr) : ojson(spec.stat_grid.back());
    if (scale == DistanceScale::IteratedLog && cfg.p >= 0.0 && cfg.p2 >= 0.0) {
        d["lil_constant_theory"] = lil_constant_theory(spec.pair);
    } else {
        d["lil_constant_theory"] = nullptr;
    }
    return run.finish();
}

RunOutcome run_kernel(const ExperimentConfig& cfg) {
    const KernelSpec spec = kernel_from_config(cfg);
    const auto grid = geometric_points(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    const auto xs = geometric_points(1.0, cfg.profile_max, cfg.profile_points);
    Run run(cfg);

    auto kcsv = run.csv("kernel.csv", {"s", "t", "R"});
    std::vector<std::pair<double, double>> pairs;
    for (double s : grid) {
        for (double t : grid) {
            kcsv.row(s, t, kernel_eval(spec, s, t));
            pairs.emplace_back(s, t);
        }
    }
    run.add(kcsv);

    const HProfile prof = h_profile(spec, xs);
    auto hcsv = run.csv("hprofile.csv", {"x", "h", "log_x", "log_h"});
    for (std::size_t i = 0; i < prof.xs.size(); ++i) {
        const double h = prof.hs[i];
        hcsv.row(prof.xs[i], h, std::log(prof.xs[i]), h > 0.0 ? std::log(h) : kNaN);
    }
    run.add(hcsv);

    auto& d = run.diagnostics();
    d["kernel"] = spec.describe();
    d["rho"] = spec.rho();
    d["unit_variance"] = spec.unit_variance();
    d["self_similarity_deviation"] = self_similarity_check(spec, cfg.scale, pairs);
    d["decay_fit"] = prof.fit == DecayFit::PowerLaw      ? "power"
                     : prof.fit == DecayFit::LogPowerLaw ? "log-power"
                                                         : "none";
    d["fitted_exponent"] = number_or_null(prof.fitted_exponent);
    d["fit_points"] = prof.points_used;
    d["fit_note"] = prof.note;
    d["min_eigen_ratio"] = covariance_matrix(spec, grid).min_eigen_ratio();
    return run.finish();
}

RunOutcome run_lil(const ExperimentConfig& cfg) {
    const KernelSpec spec = kernel_from_config(cfg);
    const GeometricGrid grid{cfg.alpha, cfg.nmax};
    grid.validate();
    require(static_cast<std::size_t>(cfg.nmax) <= kMaxSampleGrid, "nmax <= 4096");
    require(cfg.t_min > std::numbers::e, "t_min > e");
    Run run(cfg);

    const BlockQuantities blocks = block_quantities(spec, grid);
    auto bcsv = run.csv("blocks.csv", {"k", "t_k", "gamma_k", "a_k"});
    for (int k = 1; k < cfg.nmax; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        bcsv.row(k, blocks.times[i], blocks.gamma[i], blocks.a[i]);
    }
    run.add(bcsv);

    auto dcsv = run.csv("delta.csv", {"j", "delta_j"});
    for (int j = 0; j < cfg.nmax; ++j) dcsv.row(j, delta_corr(spec, cfg.alpha, j));
    run.add(dcsv);

    // The ratio sums over k = 1..n, so it needs a_1, i.e. log log t_2 > 0.
    const bool ratio_defined = !std::isnan(blocks.a.front());
    if (ratio_defined) {
        std::vector<int> ns;
        for (int n = 2; n <= cfg.nmax; ++n) ns.push_back(n);
        const auto reports = er_ratio_series(spec, cfg.alpha, ns);
        auto ecsv = run.csv("er_ratio.csv", {"n", "numerator", "denominator", "ratio"});
        for (const auto& r : reports) ecsv.row(r.n, r.numerator, r.denominator, r.ratio);
        run.add(ecsv);
    }

    const PathSampler sampler(spec, blocks.times);
    const auto paths = sampler.sample(cfg.seed, cfg.first_replica, cfg.replicas);
    const auto traces = lil_statistics(blocks, paths, cfg.t_min);
    auto pcsv = run.csv("lil_paths.csv", {"replica", "n", "t_n", "X", "statistic", "running_max_plus",
                                          "running_max_minus", "block_event", "cumulative_events"});
    for (std::uint32_t r = 0; r < cfg.replicas; ++r) {
        const auto& tr = traces[r];
        for (int n = 1; n <= cfg.nmax; ++n) {
            const auto i = static_cast<std::size_t>(n - 1);
            // Row n carries A_{n-1}, the block that ends at t_n.
            const int event = n == 1 ? -1 : tr.block_event[i - 1];
            const int cumulative = n == 1 ? 0 : tr.cumulative_events[i - 1];
            pcsv.row(cfg.first_replica + r, n, blocks.times[i], paths(r, static_cast<Eigen::Index>(i)),
                     tr.statistic[i], tr.running_max_plus[i], tr.running_max_minus[i], event, cumulative);
        }
    }
    run.add(pcsv);

    auto& d = run.diagnostics();
    d["kernel"] = spec.describe();
    d["rho"] = spec.rho();
    d["sigma"] = blocks.sigma;
    d["l0_gap"] = l0_gap(spec, cfg.alpha);
    d["er_ratio"] = ratio_defined ? "er_ratio.csv" : "skipped: a_1 undefined because log log alpha^2 <= 0";
    d["sampler_jitter"] = sampler.jitter();
    double expected_events = 0.0;
    for (double a : blocks.a) {
        if (!std::isnan(a)) expected_events += normal_sf(a);
    }
    d["expected_block_events"] = expected_events;
    return run.finish();
}

RunOutcome run_bvn(const ExperimentConfig& cfg) {
    const BvnQuery q{cfg.delta, cfg.a, cfg.b};
    Run run(cfg);
    ojson doc;
    doc["delta"] = cfg.delta;
    doc["a"] = cfg.a;
    doc["b"] = cfg.b;
    doc["phi"] = phi(q);
    doc["phi_bound"] = (cfg.a > 0.0 && cfg.b > 0.0) ? ojson(phi_bound(q)) : ojson(nullptr);
    doc["quadrant_prob"] = quadrant_prob(cfg.delta, cfg.a, cfg.b);
    doc["independent_prob"] = normal_sf(cfg.a) * normal_sf(cfg.b);
    run.add_text("bvn.json", doc.dump(2) + "\n");
    return run.finish(doc.dump(2) + "\n");
}

RunOutcome run_report(const ExperimentConfig& cfg) {
    require(!cfg.manifests.empty(), "at least one manifest for report");
    Run run(cfg);
    const Report rep = build_report(cfg.manifests);
    auto out = run.csv("summary.csv", {"subcommand", "key", "statistic", "count", "mean", "std_error", "q10", "q50",
                                       "q90", "theory"});
    for (const auto& row : rep.rows) {
        out.row(rep.subcommand, row.key, row.statistic, row.count, row.mean, row.std_error, row.q10, row.q50,
                row.q90, row.theory);
    }
    run.add(out);
    const std::string text = render_report(rep);
    run.add_text("summary.txt", text);
    run.diagnostics()["warnings"] = rep.warnings;
    run.diagnostics()["sources"] = rep.sources;
    return run.finish(text);
}

RunOutcome run(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.subcommand == "simulate") return run_simulate(cfg);
    if (cfg.subcommand == "collide") return run_collide(cfg);
    if (cfg.subcommand == "kernel") return run_kernel(cfg);
    if (cfg.subcommand == "lil") return run_lil(cfg);
    if (cfg.subcommand == "bvn") return run_bvn(cfg);
    return run_report(cfg);
}

}  // namespace erwlil::cli
