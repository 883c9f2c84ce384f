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

// Replica-parallel drivers. Each replica is a pure function of its
// StreamKey, so the OpenMP kernels below return exactly what the serial
// references return, in replica order, for any thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "erwlil/duo.hpp"
#include "erwlil/erw.hpp"

namespace erwlil {

/// Sets the OpenMP worker count; n <= 0 keeps the runtime default. Returns the count in effect.
int set_worker_threads(int n);

// --- single walks -----------------------------------------------------------

/// positions[r][h] = S_{horizons[h]} of replica first_replica + r.
using PositionTable = std::vector<std::vector<std::int64_t>>;

PositionTable walk_positions_serial(const WalkParams& params, std::span<const std::int64_t> horizons,
                                    std::uint64_t seed, std::uint32_t first_replica,
                                    std::uint32_t count);
PositionTable walk_positions(const WalkParams& params, std::span<const std::int64_t> horizons,
                             std::uint64_t seed, std::uint32_t first_replica, std::uint32_t count);

// --- pairs ----------------------------------------------------------------

struct PairRunSpec {
    PairParams pair;
    std::vector<std::int64_t> checkpoints;  ///< increasing; the last one is the horizon
    std::vector<std::int64_t> stat_grid;    ///< increasing, each in [16, horizon]

    std::int64_t horizon() const { return checkpoints.empty() ? 0 : checkpoints.back(); }
    void validate() const;
};

struct PairCheckpoint {
    std::int64_t horizon = 0;
    std::int64_t count = 0;
    std::int64_t last_collision = -1;  ///< -1 when the walks have not met
    double stat_plus = 0.0;            ///< NaN when no statistic time is <= horizon
    double stat_minus = 0.0;

    friend bool operator==(const PairCheckpoint&, const PairCheckpoint&) = default;
};

using PairReplicaResult = std::vector<PairCheckpoint>;

/// Streams both walks with O(1) memory and records collisions and running maxima.
PairReplicaResult run_pair_replica(const PairRunSpec& spec, const StreamKey& key);

std::vector<PairReplicaResult> run_pair_replicas_serial(const PairRunSpec& spec, std::uint64_t seed,
                                                        std::uint32_t first_replica,
                                                        std::uint32_t count);
std::vector<PairReplicaResult> run_pair_replicas(const PairRunSpec& spec, std::uint64_t seed,
                                                 std::uint32_t first_replica, std::uint32_t count);

}  // namespace erwlil
