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

#include "erwlil/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "erwlil/errors.hpp"
#include "erwlil/rng.hpp"

namespace erwlil::cli {

namespace {

using json = nlohmann::json;

// One table drives serialization, parsing and the unknown-key check.
template <class Visit>
void for_each_field(ExperimentConfig& c, Visit&& v) {
    v("subcommand", c.subcommand);
    v("seed", c.seed);
    v("replicas", c.replicas);
    v("first_replica", c.first_replica);
    v("threads", c.threads);
    v("out", c.out);
    v("p", c.p);
    v("q", c.q);
    v("p2", c.p2);
    v("q2", c.q2);
    v("horizon", c.horizon);
    v("checkpoints", c.checkpoints);
    v("stat_grid_start", c.stat_grid_start);
    v("full_path", c.full_path);
    v("variant", c.variant);
    v("hurst", c.hurst);
    v("beta", c.beta);
    v("gamma", c.gamma);
    v("stable_alpha", c.stable_alpha);
    v("r11", c.r11);
    v("grid_min", c.grid_min);
    v("grid_max", c.grid_max);
    v("grid_points", c.grid_points);
    v("profile_max", c.profile_max);
    v("profile_points", c.profile_points);
    v("scale", c.scale);
    v("alpha", c.alpha);
    v("nmax", c.nmax);
    v("t_min", c.t_min);
    v("delta", c.delta);
    v("a", c.a);
    v("b", c.b);
    v("manifests", c.manifests);
}

template <class T>
void read_field(const json& doc, const char* key, T& field) {
    const json& node = doc.at(key);
    try {
        if constexpr (std::is_same_v<T, std::uint64_t>) {
            // Seeds may be written as numbers or as decimal / 0x-hex strings.
            field = node.is_string() ? parse_seed(node.get<std::string>()) : node.get<std::uint64_t>();
        } else if constexpr (std::is_same_v<T, double>) {
            field = node.is_string() ? parse_probability(node.get<std::string>()) : node.get<double>();
        } else {
            field = node.get<T>();
        }
    } catch (const json::exception& e) {
        throw InvalidArgument("constraint violated: config key '" + std::string(key) + "' has the wrong type (" +
                              e.what() + ")");
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    require(std::find(std::begin(kSubcommands), std::end(kSubcommands), subcommand) != std::end(kSubcommands),
            "subcommand is one of simulate, collide, kernel, lil, bvn, report (got '" + subcommand + "')");
    require(replicas >= 1, "replicas >= 1");
    require(std::uint64_t{first_replica} + replicas <= (std::uint64_t{1} << 32), "first_replica + replicas <= 2^32");
    require(threads >= 0, "threads >= 0");
    require(!out.empty(), "out is a directory path");
    require(horizon >= 1, "horizon >= 1");
    require(std::is_sorted(checkpoints.begin(), checkpoints.end()) &&
                std::adjacent_find(checkpoints.begin(), checkpoints.end()) == checkpoints.end(),
            "checkpoints strictly increasing");
    require(checkpoints.empty() || (checkpoints.front() >= 1 && checkpoints.back() <= horizon),
            "checkpoints within [1, horizon]");
    require(stat_grid_start >= 16, "stat_grid_start >= 16");
    require(grid_min > 0.0 && grid_max >= grid_min, "0 < grid_min <= grid_max");
    require(grid_points >= 1 && grid_points <= 4096, "1 <= grid_points <= 4096");
    require(profile_max >= 1.0, "profile_max >= 1");
    require(profile_points >= 2, "profile_points >= 2");
    require(scale > 0.0, "scale > 0");
    require(t_min > 0.0, "t_min > 0");
}

nlohmann::ordered_json to_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json doc;
    ExperimentConfig copy = cfg;
    for_each_field(copy, [&](const char* key, auto& field) {
        if constexpr (std::is_same_v<std::decay_t<decltype(field)>, std::uint64_t>) {
            doc[key] = seed_text(field);
        } else {
            doc[key] = field;
        }
    });
    return doc;
}

ExperimentConfig config_from_json(const json& doc) {
    require(doc.is_object(), "config document is a JSON object");
    ExperimentConfig cfg;
    std::set<std::string> known;
    for_each_field(cfg, [&](const char* key, auto& field) {
        known.insert(key);
        if (doc.contains(key)) read_field(doc, key, field);
    });
    for (const auto& item : doc.items()) {
        require(known.count(item.key()) == 1, "known config key (got '" + item.key() + "')");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "config file readable: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("constraint violated: config file is valid JSON (" + std::string(e.what()) + ")");
    }
    // A run manifest carries its config under "config".
    if (doc.is_object() && doc.contains("tool") && doc.contains("config")) return config_from_json(doc.at("config"));
    return config_from_json(doc);
}

double parse_probability(std::string_view text) {
    auto to_double = [&](std::string_view s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        require(res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(v),
                "numeric value (got '" + std::string(text) + "')");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return to_double(text);
    auto to_int = [&](std::string_view s) {
        long long v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        require(res.ec == std::errc{} && res.ptr == s.data() + s.size(),
                "rational written as integer/integer (got '" + std::string(text) + "')");
        return v;
    };
    const long long num = to_int(text.substr(0, slash));
    const long long den = to_int(text.substr(slash + 1));
    require(den > 0, "positive denominator (got '" + std::string(text) + "')");
    // Exact comparison keeps the critical line reachable.
    if (num * 4 == den * 3) return 0.75;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string seed_text(std::uint64_t seed) { return std::to_string(seed); }

}  // namespace erwlil::cli
