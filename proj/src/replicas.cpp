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

#include "erwlil/replicas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <omp.h>

#include "erwlil/errors.hpp"

namespace erwlil {

int set_worker_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
    return omp_get_max_threads();
}

namespace {

void check_horizons(std::span<const std::int64_t> horizons) {
    require(!horizons.empty(), "at least one horizon");
    std::int64_t previous = 0;
    for (auto h : horizons) {
        require(h > previous, "horizons strictly increasing and >= 1");
        previous = h;
    }
}

std::vector<std::int64_t> positions_at(const WalkParams& params,
                                       std::span<const std::int64_t> horizons,
                                       const StreamKey& key) {
    ElephantWalk walk(params, key);
    std::vector<std::int64_t> out;
    out.reserve(horizons.size());
    for (auto h : horizons) {
        while (walk.steps() < h) walk.step();
        out.push_back(walk.position());
    }
    return out;
}

}  // namespace

PositionTable walk_positions_serial(const WalkParams& params, std::span<const std::int64_t> horizons,
                                    std::uint64_t seed, std::uint32_t first_replica,
                                    std::uint32_t count) {
    params.validate();
    check_horizons(horizons);
    PositionTable table(count);
    for (std::uint32_t r = 0; r < count; ++r) {
        table[r] = positions_at(params, horizons, {seed, first_replica + r, 0});
    }
    return table;
}

PositionTable walk_positions(const WalkParams& params, std::span<const std::int64_t> horizons,
                             std::uint64_t seed, std::uint32_t first_replica, std::uint32_t count) {
    params.validate();
    check_horizons(horizons);
    PositionTable table(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(count); ++r) {
        const auto replica = first_replica + static_cast<std::uint32_t>(r);
        table[static_cast<std::size_t>(r)] = positions_at(params, horizons, {seed, replica, 0});
    }
    return table;
}

void PairRunSpec::validate() const {
    pair.validate();
    require(!checkpoints.empty(), "at least one checkpoint horizon");
    std::int64_t previous = 0;
    for (auto h : checkpoints) {
        require(h > previous, "checkpoint horizons strictly increasing and >= 1");
        previous = h;
    }
    previous = 0;
    for (auto n : stat_grid) {
        require(n >= kMinStatisticHorizon, "statistic grid entries >= 16 (got " + std::to_string(n) + ")");
        require(n > previous, "statistic grid strictly increasing");
        require(n <= horizon(), "statistic grid within the horizon");
        previous = n;
    }
}

PairReplicaResult run_pair_replica(const PairRunSpec& spec, const StreamKey& key) {
    const auto [ka, kb] = pair_stream_keys(key);
    ElephantWalk a(spec.pair.first, ka);
    ElephantWalk b(spec.pair.second, kb);
    const auto scale = distance_scale(spec.pair);
    const double top = std::max(spec.pair.first.p, spec.pair.second.p);

    PairReplicaResult result;
    result.reserve(spec.checkpoints.size());
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    double max_plus = kNaN;
    double max_minus = kNaN;
    std::int64_t count = 0;
    std::int64_t last = -1;
    auto stat_it = spec.stat_grid.begin();
    for (const auto checkpoint : spec.checkpoints) {
        while (a.steps() < checkpoint) {
            a.step();
            b.step();
            const std::int64_t n = a.steps();
            const std::int64_t gap = a.position() - b.position();
            if (gap == 0) {
                ++count;
                last = n;
            }
            if (stat_it != spec.stat_grid.end() && *stat_it == n) {
                const double d = static_cast<double>(gap) / distance_normalizer(scale, top, n);
                max_plus = std::isnan(max_plus) ? d : std::max(max_plus, d);
                max_minus = std::isnan(max_minus) ? -d : std::max(max_minus, -d);
                ++stat_it;
            }
        }
        result.push_back({checkpoint, count, last, max_plus, max_minus});
    }
    return result;
}

std::vector<PairReplicaResult> run_pair_replicas_serial(const PairRunSpec& spec, std::uint64_t seed,
                                                        std::uint32_t first_replica,
                                                        std::uint32_t count) {
    spec.validate();
    std::vector<PairReplicaResult> out(count);
    for (std::uint32_t r = 0; r < count; ++r) {
        out[r] = run_pair_replica(spec, {seed, first_replica + r, 0});
    }
    return out;
}

std::vector<PairReplicaResult> run_pair_replicas(const PairRunSpec& spec, std::uint64_t seed,
                                                 std::uint32_t first_replica, std::uint32_t count) {
    spec.validate();
    std::vector<PairReplicaResult> out(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(count); ++r) {
        const auto replica = first_replica + static_cast<std::uint32_t>(r);
        out[static_cast<std::size_t>(r)] = run_pair_replica(spec, {seed, replica, 0});
    }
    return out;
}

}  // namespace erwlil
