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

// Pools the outputs of one or more runs of the same experiment.

#include <string>
#include <vector>

namespace erwlil::cli {

struct SummaryRow {
    std::string key;        ///< horizon, step count or source index
    std::string statistic;
    std::size_t count = 0;
    double mean = 0.0;
    double std_error = 0.0;  ///< NaN for fewer than two values
    double q10 = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
    double theory = 0.0;     ///< NaN when no reference value applies
};

struct Report {
    std::string subcommand;
    std::vector<std::string> sources;
    std::vector<std::string> warnings;
    std::uint64_t replicas = 0;
    std::vector<SummaryRow> rows;
};

/// Linear-interpolation quantile (Hyndman-Fan type 7); NaN for no values.
double quantile(std::vector<double> values, double prob);

/// Summary of finite values; NaN entries are skipped.
SummaryRow summarize(const std::string& key, const std::string& statistic, const std::vector<double>& values,
                     double theory);

/// Reads manifests, verifies output digests and pools rows by key.
/// Manifests must share subcommand and parameters; version drift is a warning.
Report build_report(const std::vector<std::string>& manifest_paths);

std::string render_report(const Report& report);

}  // namespace erwlil::cli
