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

#include "erwlil/stable_density.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "erwlil/errors.hpp"

namespace erwlil {

namespace {

void check_alpha(double alpha) {
    require(alpha > 0.0 && alpha <= 2.0, "0 < alpha <= 2 for the stable density (got " +
                                             std::to_string(alpha) + ")");
}

constexpr double kQuadratureTolerance = 1e-12;
constexpr double kAcceptedError = 1e-10;

}  // namespace

double stable_density_at_zero(double alpha) {
    check_alpha(alpha);
    return std::tgamma(1.0 + 1.0 / alpha) * std::numbers::inv_pi;
}

double stable_density_quadrature(double alpha, double x) {
    check_alpha(alpha);
    x = std::abs(x);
    if (x == 0.0) return stable_density_at_zero(alpha);
    // The integrator caches nodes internally behind a mutex; one instance per thread.
    thread_local boost::math::quadrature::ooura_fourier_cos<double> integrator(kQuadratureTolerance);
    auto envelope = [alpha](double xi) { return std::exp(-std::pow(xi, alpha)); };
    const auto [value, rel_error] = integrator.integrate(envelope, x);
    if (!(rel_error <= kAcceptedError)) {
        throw NumericalError("stable density quadrature at x=" + std::to_string(x), rel_error);
    }
    return value * std::numbers::inv_pi;
}

double stable_density_series(double alpha, double x) {
    check_alpha(alpha);
    x = std::abs(x);
    require(x > 1.0, "|x| > 1 for the stable tail series");
    const double log_x = std::log(x);
    double sum = 0.0;
    double smallest = INFINITY;
    for (int k = 1; k < 2000; ++k) {
        const double log_mag = std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) - (alpha * k + 1.0) * log_x;
        const double mag = std::exp(log_mag);
        // Past the smallest term an asymptotic expansion only gets worse.
        if (mag > smallest) break;
        smallest = mag;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        sum += sign * mag * std::sin(k * std::numbers::pi * alpha / 2.0);
        if (mag <= 1e-17 * std::abs(sum)) return sum * std::numbers::inv_pi;
    }
    const double rel = smallest / std::abs(sum);
    if (!(rel <= kAcceptedError)) throw NumericalError("stable tail series at x=" + std::to_string(x), rel);
    return sum * std::numbers::inv_pi;
}

double stable_density(double alpha, double x) {
    check_alpha(alpha);
    x = std::abs(x);
    if (alpha == 2.0) return std::exp(-x * x / 4.0) / (2.0 * std::sqrt(std::numbers::pi));
    if (x <= kStableSeriesSwitch) return stable_density_quadrature(alpha, x);
    return stable_density_series(alpha, x);
}

}  // namespace erwlil
