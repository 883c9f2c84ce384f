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

#include "erwlil/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <fstream>
#include <sstream>

#include "erwlil/bvn.hpp"
#include "erwlil/cli/csv.hpp"
#include "erwlil/cli/manifest.hpp"
#include "erwlil/duo.hpp"
#include "erwlil/errors.hpp"
#include "erwlil/erw.hpp"
#include "erwlil/lil.hpp"
#include "erwlil/version.hpp"

namespace erwlil::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double to_real(const std::string& s) {
    if (s == "nan") return kNaN;
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        require(used == s.size(), "numeric CSV cell (got '" + s + "')");
        return v;
    } catch (const std::logic_error&) {
        throw InvalidArgument("constraint violated: numeric CSV cell (got '" + s + "')");
    }
}

// Parameters that may differ between runs being pooled.
ExperimentConfig pooling_key(ExperimentConfig c) {
    c.seed = 0;
    c.first_replica = 0;
    c.replicas = 1;
    c.threads = 0;
    c.out = ".";
    return c;
}

struct Source {
    RunManifest manifest;
    fs::path dir;
};

// key -> statistic -> values, keys kept in numeric order.
using Pool = std::map<long long, std::map<std::string, std::vector<double>>>;

void add_rows(const Source& src, const std::string& file, const std::string& key_column,
              const std::vector<std::string>& stats, Pool& pool) {
    const auto table = read_csv((src.dir / file).string());
    const std::size_t key = table.column(key_column);
    std::vector<std::size_t> cols;
    for (const auto& s : stats) cols.push_back(table.column(s));
    for (const auto& row : table.rows) {
        auto& slot = pool[std::stoll(row[key])];
        for (std::size_t i = 0; i < stats.size(); ++i) slot[stats[i]].push_back(to_real(row[cols[i]]));
    }
}

}  // namespace

double quantile(std::vector<double> values, double prob) {
    std::erase_if(values, [](double v) { return std::isnan(v); });
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const double pos = prob * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SummaryRow summarize(const std::string& key, const std::string& statistic, const std::vector<double>& values,
                     double theory) {
    SummaryRow r;
    r.key = key;
    r.statistic = statistic;
    r.theory = theory;
    double sum = 0.0;
    for (double v : values) {
        if (std::isnan(v)) continue;
        sum += v;
        ++r.count;
    }
    r.mean = r.count ? sum / static_cast<double>(r.count) : kNaN;
    double ss = 0.0;
    for (double v : values) {
        if (!std::isnan(v)) ss += (v - r.mean) * (v - r.mean);
    }
    r.std_error = r.count > 1 ? std::sqrt(ss / static_cast<double>(r.count - 1) / static_cast<double>(r.count)) : kNaN;
    r.q10 = quantile(values, 0.1);
    r.q50 = quantile(values, 0.5);
    r.q90 = quantile(values, 0.9);
    return r;
}

Report build_report(const std::vector<std::string>& manifest_paths) {
    require(!manifest_paths.empty(), "at least one manifest for report");
    Report rep;
    std::vector<Source> sources;
    for (const auto& path : manifest_paths) {
        Source s{read_manifest(path), fs::path(path).parent_path()};
        if (s.dir.empty()) s.dir = ".";
        if (s.manifest.version != kVersion) {
            rep.warnings.push_back(path + ": written by version " + s.manifest.version + ", this is " + kVersion);
        }
        if (s.manifest.schema != kOutputSchema) {
            rep.warnings.push_back(path + ": output schema " + std::to_string(s.manifest.schema) + ", expected " +
                                   std::to_string(kOutputSchema));
        }
        for (const auto& o : s.manifest.outputs) {
            const auto file = (s.dir / o.file).string();
            require(sha256_file(file) == o.sha256, "output digest matches its manifest: " + file);
        }
        rep.sources.push_back(path);
        sources.push_back(std::move(s));
    }

    const ExperimentConfig& head = sources.front().manifest.config;
    rep.subcommand = head.subcommand;
    require(rep.subcommand != "report", "report inputs are experiment manifests, not report manifests");
    for (std::size_t i = 1; i < sources.size(); ++i) {
        const auto& c = sources[i].manifest.config;
        require(pooling_key(c) == pooling_key(head),
                "pooled manifests share subcommand and parameters (" + manifest_paths[i] + " differs from " +
                    manifest_paths[0] + ")");
        if (sources[i].manifest.version != sources[0].manifest.version) {
            rep.warnings.push_back("manifests come from different versions (" + sources[0].manifest.version + ", " +
                                   sources[i].manifest.version + ")");
        }
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const auto& ci = sources[i].manifest.config;
        rep.replicas += ci.replicas;
        for (std::size_t j = 0; j < i; ++j) {
            const auto& cj = sources[j].manifest.config;
            const bool overlap = ci.first_replica < cj.first_replica + cj.replicas &&
                                 cj.first_replica < ci.first_replica + ci.replicas;
            if (ci.seed == cj.seed && overlap) {
                rep.warnings.push_back(manifest_paths[i] + " and " + manifest_paths[j] +
                                       " repeat replica indices under the same seed");
            }
        }
    }

    Pool pool;
    if (rep.subcommand == "collide") {
        for (const auto& s : sources) {
            add_rows(s, "collide.csv", "horizon", {"count", "last_collision", "stat_plus", "stat_minus"}, pool);
        }
        const PairParams pair{{head.p, head.q}, {head.p2, head.q2}};
        const bool diffusive = distance_scale(pair) == DistanceScale::IteratedLog && head.p >= 0.0 && head.p2 >= 0.0;
        const double constant = diffusive ? lil_constant_theory(pair) : kNaN;
        for (auto& [h, stats] : pool) {
            auto& last = stats["last_collision"];
            for (double& v : last) {
                if (v < 0.0) v = kNaN;  // never met
            }
            const double expected = h <= kExpectedCollisionsMaxSteps ? expected_collisions(pair, h) : kNaN;
            const auto key = std::to_string(h);
            rep.rows.push_back(summarize(key, "count", stats["count"], expected));
            rep.rows.push_back(summarize(key, "last_collision", last, kNaN));
            rep.rows.push_back(summarize(key, "stat_plus", stats["stat_plus"], constant));
            rep.rows.push_back(summarize(key, "stat_minus", stats["stat_minus"], constant));
        }
    } else if (rep.subcommand == "simulate") {
        for (const auto& s : sources) add_rows(s, "walk.csv", "n", {"S_n"}, pool);
        const WalkParams params{head.p, head.q};
        for (auto& [n, stats] : pool) {
            const auto m = exact_moments(params, n);
            std::vector<double> squares;
            for (double v : stats["S_n"]) squares.push_back(v * v);
            const auto key = std::to_string(n);
            rep.rows.push_back(summarize(key, "S_n", stats["S_n"], m.mean));
            rep.rows.push_back(summarize(key, "S_n_squared", squares, m.variance + m.mean * m.mean));
        }
    } else if (rep.subcommand == "lil") {
        for (const auto& s : sources) {
            add_rows(s, "lil_paths.csv", "n", {"statistic", "running_max_plus", "cumulative_events"}, pool);
        }
        const double sigma = sources.front().manifest.diagnostics.value("sigma", kNaN);
        double expected = 0.0;
        for (auto& [n, stats] : pool) {
            // Row n counts A_1..A_{n-1}; A_k has probability normal_sf(a_k) exactly.
            const int k = static_cast<int>(n) - 1;
            if (k >= 1 && std::log(k + 1.0) + std::log(std::log(head.alpha)) > 0.0) {
                expected += normal_sf(a_level(head.alpha, k));
            }
            const auto key = std::to_string(n);
            rep.rows.push_back(summarize(key, "statistic", stats["statistic"], kNaN));
            rep.rows.push_back(summarize(key, "running_max_plus", stats["running_max_plus"], sigma));
            rep.rows.push_back(summarize(key, "cumulative_events", stats["cumulative_events"], expected));
        }
    } else {
        // kernel and bvn runs have nothing to pool; their scalars pass through.
        for (std::size_t i = 0; i < sources.size(); ++i) {
            nlohmann::json values = sources[i].manifest.diagnostics;
            if (rep.subcommand == "bvn") {
                std::ifstream in(sources[i].dir / "bvn.json");
                values = nlohmann::json::parse(in);
            }
            for (const auto& item : values.items()) {
                if (!item.value().is_number()) continue;
                rep.rows.push_back(summarize(std::to_string(i), item.key(), {item.value().get<double>()}, kNaN));
            }
        }
    }
    return rep;
}

std::string render_report(const Report& rep) {
    std::ostringstream os;
    os << "erwlil report: " << rep.subcommand << ", " << rep.sources.size() << " manifest(s), " << rep.replicas
       << " replica(s)\n";
    for (const auto& w : rep.warnings) os << "warning: " << w << '\n';
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %-18s %7s %13s %11s %11s %11s %11s %13s\n", "key", "statistic", "count",
                  "mean", "std_error", "q10", "q50", "q90", "theory");
    os << line;
    for (const auto& r : rep.rows) {
        std::snprintf(line, sizeof line, "%-10s %-18s %7zu %13.6g %11.4g %11.5g %11.5g %11.5g %13.6g\n",
                      r.key.c_str(), r.statistic.c_str(), r.count, r.mean, r.std_error, r.q10, r.q50, r.q90,
                      r.theory);
        os << line;
    }
    return os.str();
}

}  // namespace erwlil::cli
