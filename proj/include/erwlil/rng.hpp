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

// Counter-based random streams. Every draw is a pure function of
// (seed, replica, stream, counter), so replicas can be generated in any
// order and on any number of threads with bit-identical results.

#include <array>
#include <cstdint>
#include <string_view>

namespace erwlil {

struct StreamKey {
    std::uint64_t seed = 0;
    std::uint32_t replica = 0;
    std::uint32_t stream = 0;

    friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Identifier of the uniform generator and normal transform, recorded in run manifests.
inline constexpr std::string_view kGeneratorId = "philox4x32-10";
inline constexpr std::string_view kNormalTransformId = "box-muller-cos";

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Raw 128-bit block for (key, counter).
PhiloxCounter random_block(const StreamKey& key, std::uint64_t counter) noexcept;

/// Uniform on [0,1) with 53 random bits.
double uniform01(const StreamKey& key, std::uint64_t counter) noexcept;

/// Standard normal via Box-Muller (cosine branch) on one 128-bit block.
double standard_normal(const StreamKey& key, std::uint64_t counter) noexcept;

/// Parses a seed written in decimal or with a 0x hex prefix.
std::uint64_t parse_seed(std::string_view text);

}  // namespace erwlil
