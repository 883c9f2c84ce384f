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

#include "erwlil/duo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "erwlil/errors.hpp"

namespace erwlil {

DistanceScale distance_scale(const PairParams& pair) {
    const double top = std::max(pair.first.p, pair.second.p);
    switch (regime(top)) {
        case Regime::Diffusive: return DistanceScale::IteratedLog;
        case Regime::Critical: return DistanceScale::CriticalIteratedLog;
        case Regime::Superdiffusive: return DistanceScale::Ballistic;
    }
    return DistanceScale::IteratedLog;
}

const char* distance_scale_name(DistanceScale scale) {
    switch (scale) {
        case DistanceScale::IteratedLog: return "sqrt(2n loglog n)";
        case DistanceScale::CriticalIteratedLog: return "sqrt(2n log n logloglog n)";
        case DistanceScale::Ballistic: return "n^(2p-1)";
    }
    return "unknown";
}

double distance_normalizer(DistanceScale scale, double max_memory, std::int64_t n) {
    require(n >= kMinStatisticHorizon,
            "statistic horizons must be >= 16 (got " + std::to_string(n) + ")");
    const double x = static_cast<double>(n);
    switch (scale) {
        case DistanceScale::IteratedLog: return std::sqrt(2.0 * x * std::log(std::log(x)));
        case DistanceScale::CriticalIteratedLog:
            return std::sqrt(2.0 * x * std::log(x) * std::log(std::log(std::log(x))));
        case DistanceScale::Ballistic: return std::pow(x, 2.0 * max_memory - 1.0);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::pair<StreamKey, StreamKey> pair_stream_keys(const StreamKey& key) {
    StreamKey a = key;
    StreamKey b = key;
    a.stream = 2 * key.stream;
    b.stream = 2 * key.stream + 1;
    return {a, b};
}

std::pair<WalkPath, WalkPath> simulate_pair(const PairParams& pair, std::int64_t n_steps,
                                            const StreamKey& key) {
    pair.validate();
    const auto [ka, kb] = pair_stream_keys(key);
    return {simulate(pair.first, n_steps, ka), simulate(pair.second, n_steps, kb)};
}

CollisionRecord collisions(const WalkPath& first, const WalkPath& second) {
    require(first.size() == second.size(), "paths of equal length for collisions");
    CollisionRecord record;
    record.horizon = first.empty() ? 0 : first.back().n;
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i].position == second[i].position) record.collision_times.push_back(first[i].n);
    }
    record.count = static_cast<std::int64_t>(record.collision_times.size());
    if (!record.collision_times.empty()) record.last = record.collision_times.back();
    return record;
}

double expected_collisions(const PairParams& pair, std::int64_t horizon) {
    pair.validate();
    require(horizon >= 1 && horizon <= kExpectedCollisionsMaxSteps,
            "1 <= horizon <= " + std::to_string(kExpectedCollisionsMaxSteps) + " for expected_collisions");
    std::vector<double> a{1.0 - pair.first.q, pair.first.q};
    std::vector<double> b{1.0 - pair.second.q, pair.second.q};
    std::vector<double> scratch;
    double total = 0.0;
    for (std::int64_t n = 1;; ++n) {
        // Both laws live on the same support {-n, ..., n}.
        double meet = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) meet += a[i] * b[i];
        total += meet;
        if (n == horizon) break;
        advance_law(pair.first, n, a, scratch);
        advance_law(pair.second, n, b, scratch);
    }
    return total;
}

double lil_constant_theory(const PairParams& pair) {
    const double p = pair.first.p;
    const double p2 = pair.second.p;
    require(p >= 0.0 && regime(p) == Regime::Diffusive,
            "p < 3/4 for the diffusive limsup constant (got p=" + std::to_string(p) + ")");
    require(p2 >= 0.0 && regime(p2) == Regime::Diffusive,
            "p' < 3/4 for the diffusive limsup constant (got p'=" + std::to_string(p2) + ")");
    return std::sqrt(1.0 / (3.0 - 4.0 * p) + 1.0 / (3.0 - 4.0 * p2));
}

std::vector<DistanceStat> distance_statistic(const WalkPath& first, const WalkPath& second,
                                             const PairParams& pair,
                                             std::span<const std::int64_t> grid) {
    require(first.size() == second.size(), "paths of equal length for distance_statistic");
    const auto scale = distance_scale(pair);
    const double top = std::max(pair.first.p, pair.second.p);
    std::vector<DistanceStat> out;
    out.reserve(grid.size());
    double max_plus = -std::numeric_limits<double>::infinity();
    double max_minus = -std::numeric_limits<double>::infinity();
    std::int64_t previous = 0;
    for (const auto n : grid) {
        require(n > previous, "statistic grid strictly increasing");
        require(n <= static_cast<std::int64_t>(first.size()), "statistic grid within path length");
        const double norm = distance_normalizer(scale, top, n);
        const auto idx = static_cast<std::size_t>(n - 1);
        const double d = static_cast<double>(first[idx].position - second[idx].position) / norm;
        max_plus = std::max(max_plus, d);
        max_minus = std::max(max_minus, -d);
        out.push_back({n, max_plus, max_minus});
        previous = n;
    }
    return out;
}

}  // namespace erwlil
