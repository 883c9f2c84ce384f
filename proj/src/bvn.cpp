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

#include "erwlil/bvn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "erwlil/errors.hpp"

namespace erwlil {

namespace {

constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;

void check_correlation(double delta) {
    require(std::abs(delta) < 1.0, "|delta| < 1 (got delta=" + std::to_string(delta) + ")");
}

}  // namespace

double normal_sf(double x) { return 0.5 * std::erfc(x * std::numbers::sqrt2 * 0.5); }

double psi(double delta, double x, double y) {
    check_correlation(delta);
    const double one_minus = 1.0 - delta * delta;
    return kInvTwoPi / std::sqrt(one_minus) *
           std::exp(-(x * x - 2.0 * delta * x * y + y * y) / (2.0 * one_minus));
}

namespace {

struct Panel {
    double kronrod = 0.0;
    double gauss = 0.0;
};

// One GK15 panel of exp(-(a^2 - 2ab sin t + b^2) / (2 cos^2 t)) over [lo, hi].
// Gauss 7 nodes are the even Kronrod indices.
Panel theta_panel(double lo, double hi, double sum_sq, double cross) {
    const auto& xk = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto f = [&](double theta) {
        const double s = std::sin(theta);
        const double c2 = 1.0 - s * s;
        return std::exp(-(sum_sq - cross * s) / (2.0 * c2));
    };
    const double f0 = f(mid);
    Panel p{wk[0] * f0, wg[0] * f0};
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double pair = f(mid - half * xk[i]) + f(mid + half * xk[i]);
        p.kronrod += wk[i] * pair;
        if (i % 2 == 0) p.gauss += wg[i / 2] * pair;
    }
    p.kronrod *= half;
    p.gauss *= half;
    return p;
}

// Bisects until |K - G| / (2 pi) meets the local share of the tolerance.
double theta_adaptive(double lo, double hi, double sum_sq, double cross, double tol, int depth,
                      double& error) {
    const Panel p = theta_panel(lo, hi, sum_sq, cross);
    const double err = kInvTwoPi * std::abs(p.kronrod - p.gauss);
    if (err <= tol || depth == 0) {
        error += err;
        return p.kronrod;
    }
    const double mid = 0.5 * (lo + hi);
    return theta_adaptive(lo, mid, sum_sq, cross, 0.5 * tol, depth - 1, error) +
           theta_adaptive(mid, hi, sum_sq, cross, 0.5 * tol, depth - 1, error);
}

constexpr int kPhiMaxDepth = 20;

}  // namespace

double phi(const BvnQuery& q) {
    check_correlation(q.delta);
    if (q.delta == 0.0) return 0.0;

    // With t = sin(theta) the 1/sqrt(1-t^2) factor cancels against dt and the
    // integrand stays bounded as |delta| -> 1.
    const double sign = q.delta < 0.0 ? -1.0 : 1.0;
    const double upper = std::asin(std::abs(q.delta));
    double abs_error = 0.0;
    const double value = theta_adaptive(0.0, upper, q.a * q.a + q.b * q.b, 2.0 * q.a * q.b * sign,
                                        0.1 * kPhiAbsTolerance, kPhiMaxDepth, abs_error);
    if (!(abs_error <= kPhiAbsTolerance)) {
        throw NumericalError("phi quadrature did not converge", abs_error);
    }
    return sign * kInvTwoPi * value;
}

PhiRule::PhiRule(double delta) : delta_(delta) {
    check_correlation(delta);
    if (delta == 0.0) return;
    sign_ = delta < 0.0 ? -1.0 : 1.0;
    const double half = 0.5 * std::asin(std::abs(delta));
    const auto& xk = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
    int slot = 0;
    auto place = [&](double theta, double w_k, double w_g) {
        const double s = std::sin(theta);
        const double c2 = 1.0 - s * s;
        quad_[slot] = 0.5 / c2;
        cross_[slot] = s / c2;
        kronrod_[slot] = half * w_k;
        gauss_[slot] = half * w_g;
        ++slot;
    };
    place(half, wk[0], wg[0]);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double wgi = (i % 2 == 0) ? wg[i / 2] : 0.0;
        place(half * (1.0 - xk[i]), wk[i], wgi);
        place(half * (1.0 + xk[i]), wk[i], wgi);
    }
}

double PhiRule::operator()(double a, double b) const {
    if (delta_ == 0.0) return 0.0;
    const double sum_sq = a * a + b * b;
    const double cross = a * b * sign_;
    double k = 0.0, g = 0.0;
    for (int i = 0; i < kNodes; ++i) {
        const double f = std::exp(cross * cross_[i] - sum_sq * quad_[i]);
        k += kronrod_[i] * f;
        g += gauss_[i] * f;
    }
    // Same acceptance test as the first level of phi(); otherwise bisect there.
    if (kInvTwoPi * std::abs(k - g) > 0.1 * kPhiAbsTolerance) return phi({delta_, a, b});
    return sign_ * kInvTwoPi * k;
}

double phi_bound(const BvnQuery& q) {
    check_correlation(q.delta);
    require(q.a > 0.0 && q.b > 0.0, "a > 0 and b > 0 for the phi bound");
    const double d = std::abs(q.delta);
    const double one_minus = 1.0 - q.delta * q.delta;
    return kInvTwoPi / std::sqrt(one_minus) * std::exp(-(q.a * q.a + q.b * q.b) / 2.0) *
           std::exp(d * q.a * q.b / one_minus) * d;
}

double quadrant_prob(double delta, double a, double b) {
    // The sum can land an ulp outside [0, 1] when the quadrant is nearly empty or full.
    return std::clamp(normal_sf(a) * normal_sf(b) + phi({delta, a, b}), 0.0, 1.0);
}

}  // namespace erwlil
