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

// Elephant random walk: simulation and exact finite-n law.
//
// The step rule copies a uniformly chosen past step with probability p and
// flips it otherwise. Given S_n this makes the next step +1 with probability
// 1/2 + (2p-1) S_n / (2n), so (n, S_n) is a Markov chain and both the O(1)
// sampler and the dynamic-programming law below rely on that closed form.

#include <cstdint>
#include <span>
#include <vector>

#include "erwlil/rng.hpp"

namespace erwlil {

struct WalkParams {
    double p = 0.5;  ///< memory parameter
    double q = 0.5;  ///< probability that the first step is +1

    void validate() const;
};

struct WalkState {
    std::int64_t n = 0;
    std::int64_t position = 0;

    friend bool operator==(const WalkState&, const WalkState&) = default;
};

using WalkPath = std::vector<WalkState>;

enum class Regime { Diffusive, Critical, Superdiffusive };

inline constexpr double kCriticalMemory = 0.75;
inline constexpr double kCriticalTolerance = 1e-12;

Regime regime(double p);
const char* regime_name(Regime r);

/// P(X_{n+1} = +1 | S_n). Requires state.n >= 1.
double step_probability(const WalkParams& params, const WalkState& state);

/// O(1)-memory sampler. Step i (1-based) consumes uniform01(key, i - 1).
class ElephantWalk {
public:
    ElephantWalk(const WalkParams& params, const StreamKey& key);

    /// Advances one step and returns the increment (+1 or -1).
    int step() noexcept;

    std::int64_t position() const noexcept { return position_; }
    std::int64_t steps() const noexcept { return n_; }
    WalkState state() const noexcept { return {n_, position_}; }

private:
    StreamKey key_;
    double q_;
    double slope_;  // (2p - 1) / 2
    std::int64_t n_ = 0;
    std::int64_t position_ = 0;
};

/// States for n = 1..n_steps.
WalkPath simulate(const WalkParams& params, std::int64_t n_steps, const StreamKey& key);

/// Literal sampler that stores every past step and draws U_n. Test oracle only.
WalkPath simulate_naive(const WalkParams& params, std::int64_t n_steps, const StreamKey& key);

/// Law of S_n on its support {-n, -n+2, ..., n}.
struct ExactLaw {
    std::int64_t n = 0;
    std::vector<double> pmf;  ///< pmf[i] = P(S_n = -n + 2i)

    double probability(std::int64_t k) const;
    std::int64_t support_value(std::size_t i) const { return -n + 2 * static_cast<std::int64_t>(i); }
};

inline constexpr std::int64_t kExactLawMaxSteps = 4096;

ExactLaw exact_law(const WalkParams& params, std::int64_t n);

/// One step of the law recursion: pmf of S_m (m + 1 entries) becomes pmf of S_{m+1}.
void advance_law(const WalkParams& params, std::int64_t m, std::vector<double>& pmf, std::vector<double>& scratch);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Exact mean and variance of S_n from the first and second moment recursions.
Moments exact_moments(const WalkParams& params, std::int64_t n);

/// S_n / n^{2p-1} at each horizon along one path. Requires p > 3/4.
std::vector<double> superdiffusive_limit_estimate(const WalkParams& params,
                                                  std::span<const std::int64_t> horizons,
                                                  const StreamKey& key);

/// first, 2 first, 4 first, ... up to and including the last value <= last.
std::vector<std::int64_t> doubling_horizons(std::int64_t first, std::int64_t last);

}  // namespace erwlil
