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

#include "erwlil/rng.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "erwlil/errors.hpp"

namespace erwlil {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline PhiloxCounter philox_round(const PhiloxCounter& ctr, const PhiloxKey& key) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        counter = philox_round(counter, key);
    }
    return counter;
}

PhiloxCounter random_block(const StreamKey& key, std::uint64_t counter) noexcept {
    const PhiloxCounter ctr{static_cast<std::uint32_t>(counter),
                            static_cast<std::uint32_t>(counter >> 32), key.replica, key.stream};
    const PhiloxKey k{static_cast<std::uint32_t>(key.seed),
                      static_cast<std::uint32_t>(key.seed >> 32)};
    return philox4x32_10(ctr, k);
}

double uniform01(const StreamKey& key, std::uint64_t counter) noexcept {
    const auto block = random_block(key, counter);
    return to_unit(block[0], block[1]);
}

double standard_normal(const StreamKey& key, std::uint64_t counter) noexcept {
    const auto block = random_block(key, counter);
    // u1 in (0,1] keeps the logarithm finite.
    const double u1 = 1.0 - to_unit(block[0], block[1]);
    const double u2 = to_unit(block[2], block[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t parse_seed(std::string_view text) {
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        base = 16;
        text.remove_prefix(2);
    }
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value, base);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw InvalidArgument("constraint violated: seed must be a 64-bit decimal or 0x-hex integer, got '" +
                              std::string(text) + "'");
    }
    return value;
}

}  // namespace erwlil
