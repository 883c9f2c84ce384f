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

#include "erwlil/erw.hpp"

#include <cmath>
#include <string>

#include "erwlil/errors.hpp"

namespace erwlil {

void WalkParams::validate() const {
    require(p >= 0.0 && p <= 1.0, "0 <= p <= 1 (got p=" + std::to_string(p) + ")");
    require(q >= 0.0 && q <= 1.0, "0 <= q <= 1 (got q=" + std::to_string(q) + ")");
}

Regime regime(double p) {
    if (std::abs(p - kCriticalMemory) < kCriticalTolerance) return Regime::Critical;
    return p < kCriticalMemory ? Regime::Diffusive : Regime::Superdiffusive;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Diffusive: return "diffusive";
        case Regime::Critical: return "critical";
        case Regime::Superdiffusive: return "superdiffusive";
    }
    return "unknown";
}

double step_probability(const WalkParams& params, const WalkState& state) {
    require(state.n >= 1, "step_probability needs n >= 1; the first step uses q");
    return 0.5 + (2.0 * params.p - 1.0) * static_cast<double>(state.position) /
                     (2.0 * static_cast<double>(state.n));
}

ElephantWalk::ElephantWalk(const WalkParams& params, const StreamKey& key)
    : key_(key), q_(params.q), slope_(params.p - 0.5) {
    params.validate();
}

int ElephantWalk::step() noexcept {
    const double u = uniform01(key_, static_cast<std::uint64_t>(n_));
    double up;
    if (n_ == 0) {
        up = q_;
    } else {
        up = 0.5 + slope_ * static_cast<double>(position_) / static_cast<double>(n_);
    }
    const int x = u < up ? 1 : -1;
    position_ += x;
    ++n_;
    return x;
}

WalkPath simulate(const WalkParams& params, std::int64_t n_steps, const StreamKey& key) {
    require(n_steps >= 1, "n_steps >= 1");
    ElephantWalk walk(params, key);
    WalkPath path;
    path.reserve(static_cast<std::size_t>(n_steps));
    for (std::int64_t i = 0; i < n_steps; ++i) {
        walk.step();
        path.push_back(walk.state());
    }
    return path;
}

WalkPath simulate_naive(const WalkParams& params, std::int64_t n_steps, const StreamKey& key) {
    require(n_steps >= 1, "n_steps >= 1");
    params.validate();
    std::vector<int> steps;
    steps.reserve(static_cast<std::size_t>(n_steps));
    WalkPath path;
    path.reserve(static_cast<std::size_t>(n_steps));

    // Two draws per step: counter 2n picks U_n, counter 2n+1 decides copy vs flip.
    std::int64_t position = 0;
    for (std::int64_t n = 0; n < n_steps; ++n) {
        int x;
        if (n == 0) {
            x = uniform01(key, 0) < params.q ? 1 : -1;
        } else {
            const double u = uniform01(key, 2 * static_cast<std::uint64_t>(n));
            auto index = static_cast<std::int64_t>(u * static_cast<double>(n));
            if (index >= n) index = n - 1;
            const int remembered = steps[static_cast<std::size_t>(index)];
            const bool copy = uniform01(key, 2 * static_cast<std::uint64_t>(n) + 1) < params.p;
            x = copy ? remembered : -remembered;
        }
        steps.push_back(x);
        position += x;
        path.push_back({n + 1, position});
    }
    return path;
}

double ExactLaw::probability(std::int64_t k) const {
    if (k < -n || k > n || ((k + n) % 2) != 0) return 0.0;
    return pmf[static_cast<std::size_t>((k + n) / 2)];
}

void advance_law(const WalkParams& params, std::int64_t m, std::vector<double>& pmf, std::vector<double>& scratch) {
    require(m >= 1 && pmf.size() == static_cast<std::size_t>(m + 1), "pmf of S_m has m + 1 entries");
    // Index i <-> -m + 2i.
    scratch.assign(static_cast<std::size_t>(m + 2), 0.0);
    for (std::int64_t i = 0; i <= m; ++i) {
        const double mass = pmf[static_cast<std::size_t>(i)];
        if (mass == 0.0) continue;
        const double up = step_probability(params, {m, -m + 2 * i});
        scratch[static_cast<std::size_t>(i + 1)] += mass * up;
        scratch[static_cast<std::size_t>(i)] += mass * (1.0 - up);
    }
    pmf.swap(scratch);
}

ExactLaw exact_law(const WalkParams& params, std::int64_t n) {
    params.validate();
    require(n >= 1 && n <= kExactLawMaxSteps,
            "1 <= n <= " + std::to_string(kExactLawMaxSteps) + " for exact_law (got n=" + std::to_string(n) + ")");

    std::vector<double> current{1.0 - params.q, params.q};
    std::vector<double> scratch;
    for (std::int64_t m = 1; m < n; ++m) advance_law(params, m, current, scratch);
    return {n, std::move(current)};
}

Moments exact_moments(const WalkParams& params, std::int64_t n) {
    params.validate();
    require(n >= 1, "n >= 1 for exact_moments");
    const double drift = 2.0 * params.p - 1.0;
    double mean = 2.0 * params.q - 1.0;
    double second = 1.0;
    for (std::int64_t m = 1; m < n; ++m) {
        const double inv = 1.0 / static_cast<double>(m);
        // E[S_{m+1}^2] = E[S_m^2] + 2 E[S_m X_{m+1}] + 1 with E[X_{m+1} | S_m] = drift S_m / m.
        second = (1.0 + 2.0 * drift * inv) * second + 1.0;
        mean *= 1.0 + drift * inv;
    }
    return {mean, second - mean * mean};
}

std::vector<double> superdiffusive_limit_estimate(const WalkParams& params,
                                                  std::span<const std::int64_t> horizons,
                                                  const StreamKey& key) {
    require(regime(params.p) == Regime::Superdiffusive,
            "p > 3/4 for the superdiffusive limit (got p=" + std::to_string(params.p) + ")");
    std::vector<double> out;
    out.reserve(horizons.size());
    ElephantWalk walk(params, key);
    const double exponent = 2.0 * params.p - 1.0;
    std::int64_t previous = 0;
    for (const auto horizon : horizons) {
        require(horizon > previous, "horizons strictly increasing and >= 1");
        while (walk.steps() < horizon) walk.step();
        out.push_back(static_cast<double>(walk.position()) /
                      std::pow(static_cast<double>(horizon), exponent));
        previous = horizon;
    }
    return out;
}

std::vector<std::int64_t> doubling_horizons(std::int64_t first, std::int64_t last) {
    require(first >= 1 && first <= last, "1 <= first <= last for doubling horizons");
    std::vector<std::int64_t> out;
    for (std::int64_t h = first; h <= last; h *= 2) out.push_back(h);
    return out;
}

}  // namespace erwlil
