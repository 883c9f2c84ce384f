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

// Two independent elephant walks: collisions and the normalized distance.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "erwlil/erw.hpp"

namespace erwlil {

struct PairParams {
    WalkParams first;
    WalkParams second;

    void validate() const {
        first.validate();
        second.validate();
    }
};

struct CollisionRecord {
    std::int64_t horizon = 0;
    std::vector<std::int64_t> collision_times;
    std::int64_t count = 0;
    std::optional<std::int64_t> last;
};

struct DistanceStat {
    std::int64_t horizon = 0;
    double running_max_plus = 0.0;
    double running_max_minus = 0.0;
};

/// How |S_n - S'_n| is scaled, chosen from the larger memory parameter.
enum class DistanceScale {
    IteratedLog,        ///< sqrt(2 n log log n), both walks diffusive
    CriticalIteratedLog,///< sqrt(2 n log n log log log n), larger parameter equals 3/4
    Ballistic,          ///< n^{2 max(p,p') - 1}, larger parameter above 3/4
};

DistanceScale distance_scale(const PairParams& pair);
const char* distance_scale_name(DistanceScale scale);

inline constexpr std::int64_t kMinStatisticHorizon = 16;

/// Normalizer at time n; n >= 16 keeps the nested logarithms positive.
double distance_normalizer(DistanceScale scale, double max_memory, std::int64_t n);

/// Stream ids 2*key.stream and 2*key.stream+1 drive the two walks.
std::pair<StreamKey, StreamKey> pair_stream_keys(const StreamKey& key);

std::pair<WalkPath, WalkPath> simulate_pair(const PairParams& pair, std::int64_t n_steps,
                                            const StreamKey& key);

CollisionRecord collisions(const WalkPath& first, const WalkPath& second);

inline constexpr std::int64_t kExpectedCollisionsMaxSteps = 1 << 15;

/// E[#{1 <= n <= N : S_n = S'_n}] = sum_n sum_k P(S_n = k) P(S'_n = k), from the exact laws.
double expected_collisions(const PairParams& pair, std::int64_t horizon);

/// sqrt(1/(3-4p) + 1/(3-4p')), the limsup constant for two diffusive walks.
double lil_constant_theory(const PairParams& pair);

/// Running maxima of +-(S_n - S'_n)/normalizer(n), sampled at the grid times.
std::vector<DistanceStat> distance_statistic(const WalkPath& first, const WalkPath& second,
                                             const PairParams& pair,
                                             std::span<const std::int64_t> grid);

}  // namespace erwlil
