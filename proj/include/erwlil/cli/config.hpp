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

#pragma once

// One experiment per document. Keys mirror the command-line flags with
// dashes replaced by underscores; every field is written out on
// serialization, so a parsed config carries no implicit defaults.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace erwlil::cli {

inline constexpr const char* kSubcommands[] = {"simulate", "collide", "kernel", "lil", "bvn", "report"};

struct ExperimentConfig {
    std::string subcommand = "simulate";

    // global
    std::uint64_t seed = 1;
    std::uint32_t replicas = 100;
    std::uint32_t first_replica = 0;
    int threads = 0;
    std::string out = ".";

    // walks (simulate, collide) and the erwdiff kernel
    double p = 0.5;
    double q = 0.5;
    double p2 = 0.5;
    double q2 = 0.5;
    std::int64_t horizon = 10000;
    std::vector<std::int64_t> checkpoints;  // empty: horizon only
    std::int64_t stat_grid_start = 16;
    bool full_path = false;

    // kernels (kernel, lil)
    std::string variant = "fbm";
    double hurst = 0.5;
    double beta = 0.0;
    double gamma = 0.0;
    double stable_alpha = 1.0;
    double r11 = 1.0;
    double grid_min = 1.0;
    double grid_max = 100.0;
    int grid_points = 8;
    double profile_max = 1e6;
    int profile_points = 61;
    double scale = 2.0;

    // lil
    double alpha = 16.0;
    int nmax = 30;
    double t_min = 10.0;

    // bvn
    double delta = 0.0;
    double a = 1.0;
    double b = 1.0;

    // report
    std::vector<std::string> manifests;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

    /// Range and consistency checks; throws InvalidArgument.
    void validate() const;
};

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

/// Rejects unknown keys and ill-typed values with InvalidArgument.
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// Reads a config document, or the "config" member of a run manifest.
ExperimentConfig load_config(const std::string& path);

/// "0.6", "3/4" or "1e-1". Rationals equal to 3/4 map to exactly 0.75.
double parse_probability(std::string_view text);

/// Decimal seed string used in manifests (JSON numbers lose 64-bit precision in many readers).
std::string seed_text(std::uint64_t seed);

}  // namespace erwlil::cli
