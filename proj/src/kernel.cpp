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

#include "erwlil/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <charconv>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "erwlil/errors.hpp"
#include "erwlil/stable_density.hpp"

namespace erwlil {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Shortest form that round-trips.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// I(r) = int_0^1 (1-v)^beta (1-rv)^beta v^{-gamma} dv, with 1 - r passed
// directly. v = w^{1/(1-gamma)} removes the v^{-gamma} singularity; the
// (1-v)^beta endpoint, singular for beta < 0, is left to tanh-sinh, which
// samples the endpoint layer through the complement argument.
double rl_integral(double beta, double gamma, double one_minus_r) {
    if (beta == 0.0) return 1.0 / (1.0 - gamma);
    const double k = 1.0 / (1.0 - gamma);
    auto integrand = [&](double y, double yc) {
        // w = (1+y)/2 in (0,1); the complement keeps 1-w accurate near w = 1.
        const double w = y < 0 ? -0.5 * yc : 0.5 * (1.0 + y);
        const double one_minus_w = y > 0 ? 0.5 * yc : 0.5 * (1.0 - y);
        const double log_w = w > 0.5 ? std::log1p(-one_minus_w) : std::log(w);
        const double v = std::exp(k * log_w);
        const double one_minus_v = -std::expm1(k * log_w);
        const double one_minus_rv = one_minus_v + one_minus_r * v;
        if (one_minus_v <= 0.0) return 0.0;
        return std::pow(one_minus_v, beta) * std::pow(one_minus_rv, beta);
    };
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(integrand, 1e-13, &error, &l1);
    // dv = k w^{k-1} dw and v^{-gamma} = w^{-gamma k}; their product is k. dw = dy/2.
    const double result = 0.5 * k * value;
    const double rel = error / std::abs(value);
    if (!(rel <= kKernelQuadratureTolerance)) {
        throw NumericalError("RL-FBM kernel quadrature", rel);
    }
    return result;
}

// log(1 - (1 - e^{-L})^{2H}) for L > 0, stable for large L.
double fbm_log_gap(double hurst, double log_x) {
    const double u = std::exp(-log_x);
    if (u < 1e-12) return std::log(2.0 * hurst) - log_x + std::log1p((1.0 - 2.0 * hurst) * u / 2.0);
    return std::log(-std::expm1(2.0 * hurst * std::log1p(-u)));
}

}  // namespace

KernelSpec KernelSpec::fbm(double hurst) {
    require(hurst > 0.0 && hurst < 1.0, "0 < H < 1 for FBM (got H=" + fmt(hurst) + ")");
    return KernelSpec(FbmKernel{hurst}, hurst);
}

KernelSpec KernelSpec::rlfbm(double beta, double gamma) {
    require(beta > -0.5, "beta > -1/2 for RL-FBM (got beta=" + fmt(beta) + ")");
    require(gamma >= 0.0 && gamma < 1.0, "0 <= gamma < 1 for RL-FBM (got gamma=" + fmt(gamma) + ")");
    return KernelSpec(RlFbmKernel{beta, gamma}, beta - gamma / 2.0 + 0.5);
}

KernelSpec KernelSpec::erw_diff(double p, double p2) {
    require(p > 0.0 && p < 0.75, "0 < p < 3/4 for the ERW difference kernel (got p=" + fmt(p) + ")");
    require(p2 > 0.0 && p2 < 0.75, "0 < p' < 3/4 for the ERW difference kernel (got p'=" + fmt(p2) + ")");
    return KernelSpec(ErwDiffKernel{p, p2}, 0.5);
}

KernelSpec KernelSpec::stable_spectral(double alpha, double r11) {
    require(alpha > 0.0 && alpha <= 2.0, "0 < alpha <= 2 for the stable spectral kernel (got alpha=" + fmt(alpha) + ")");
    require(r11 > 0.0, "R(1,1) > 0 for the stable spectral kernel");
    return KernelSpec(StableSpectralKernel{alpha, r11}, 0.5);
}

double KernelSpec::unit_variance() const { return kernel_eval(*this, 1.0, 1.0); }

std::string KernelSpec::name() const {
    return std::visit(overloaded{[](const FbmKernel&) { return std::string("fbm"); },
                                 [](const RlFbmKernel&) { return std::string("rlfbm"); },
                                 [](const ErwDiffKernel&) { return std::string("erwdiff"); },
                                 [](const StableSpectralKernel&) { return std::string("stable"); }},
                      variant_);
}

std::string KernelSpec::describe() const {
    return std::visit(
        overloaded{[](const FbmKernel& k) { return "fbm(H=" + fmt(k.hurst) + ")"; },
                   [](const RlFbmKernel& k) { return "rlfbm(beta=" + fmt(k.beta) + ", gamma=" + fmt(k.gamma) + ")"; },
                   [](const ErwDiffKernel& k) { return "erwdiff(p=" + fmt(k.p) + ", p2=" + fmt(k.p2) + ")"; },
                   [](const StableSpectralKernel& k) {
                       return "stable(alpha=" + fmt(k.alpha) + ", r11=" + fmt(k.r11) + ")";
                   }},
        variant_);
}

bool KernelSpec::uses_quadrature() const noexcept {
    return std::holds_alternative<RlFbmKernel>(variant_) ||
           std::holds_alternative<StableSpectralKernel>(variant_);
}

double kernel_eval(const KernelSpec& spec, double s, double t) {
    require(s > 0.0 && t > 0.0, "s > 0 and t > 0 for kernel evaluation");
    const double lo = std::min(s, t);
    const double hi = std::max(s, t);
    return std::visit(
        overloaded{
            [&](const FbmKernel& k) {
                const double e = 2.0 * k.hurst;
                return 0.5 * (std::pow(s, e) + std::pow(t, e) - std::pow(hi - lo, e));
            },
            [&](const RlFbmKernel& k) {
                return std::pow(lo, 1.0 - k.gamma + k.beta) * std::pow(hi, k.beta) *
                       rl_integral(k.beta, k.gamma, (hi - lo) / hi);
            },
            [&](const ErwDiffKernel& k) {
                auto part = [&](double p) {
                    const double c = 3.0 - 4.0 * p;
                    return std::pow(s * t, 2.0 * p - 1.0) / c * std::pow(lo, c);
                };
                return part(k.p) + part(k.p2);
            },
            [&](const StableSpectralKernel&) {
                return std::sqrt(s * t) * h_value(spec, std::log(hi / lo));
            }},
        spec.variant());
}

double h_value(const KernelSpec& spec, double log_x) {
    require(log_x >= 0.0, "x >= 1 for the h profile");
    const double L = log_x;
    return std::visit(
        overloaded{
            [&](const FbmKernel& k) {
                const double H = k.hurst;
                if (L == 0.0) return 1.0;
                return 0.5 * (std::exp(-H * L) + std::exp(H * L + fbm_log_gap(H, L)));
            },
            [&](const RlFbmKernel& k) {
                const double one_minus_r = -std::expm1(-L);
                return std::exp(-0.5 * (1.0 - k.gamma) * L) * rl_integral(k.beta, k.gamma, one_minus_r);
            },
            [&](const ErwDiffKernel& k) {
                auto part = [&](double p) { return std::exp((2.0 * p - 1.5) * L) / (3.0 - 4.0 * p); };
                return part(k.p) + part(k.p2);
            },
            [&](const StableSpectralKernel& k) {
                return k.r11 * stable_density(k.alpha, L) / stable_density_at_zero(k.alpha);
            }},
        spec.variant());
}

double self_similarity_check(const KernelSpec& spec, double c,
                             std::span<const std::pair<double, double>> pairs) {
    require(c > 0.0, "c > 0 for the self-similarity check");
    const double scale = std::pow(c, 2.0 * spec.rho());
    double worst = 0.0;
    for (const auto& [s, t] : pairs) {
        const double expected = scale * kernel_eval(spec, s, t);
        const double scaled = kernel_eval(spec, c * s, c * t);
        worst = std::max(worst, std::abs(scaled - expected) / std::abs(expected));
    }
    return worst;
}

HProfile h_profile(const KernelSpec& spec, std::span<const double> xs) {
    require(!xs.empty(), "at least one x for the h profile");
    require(xs.front() >= 1.0, "xs[0] >= 1 for the h profile");
    HProfile out;
    out.xs.assign(xs.begin(), xs.end());
    out.hs.reserve(xs.size());
    double previous = 0.0;
    for (double x : xs) {
        require(x > previous, "xs strictly increasing");
        out.hs.push_back(h_value(spec, std::log(x)));
        previous = x;
    }
    out.fitted_exponent = std::numeric_limits<double>::quiet_NaN();

    const auto* stable = std::get_if<StableSpectralKernel>(&spec.variant());
    if (stable && stable->alpha == 2.0) {
        out.fit = DecayFit::NotFitted;
        out.note = "gaussian spectral measure: h decays like exp(-(log x)^2/4), faster than any power of log x";
        return out;
    }

    // Regressor: log x, or log log x for the stable kernel; keep the top decade of it.
    const bool log_power = stable != nullptr;
    std::vector<double> rx;
    std::vector<double> ry;
    const double top = log_power ? std::log(std::log(xs.back())) : std::log(xs.back());
    const double floor = top - std::log(10.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < kDecayFitMinX || !(out.hs[i] > 0.0)) continue;
        const double reg = log_power ? std::log(std::log(xs[i])) : std::log(xs[i]);
        if (reg < floor) continue;
        rx.push_back(reg);
        ry.push_back(std::log(out.hs[i]));
    }
    if (rx.size() < 2) {
        out.note = "fewer than two usable points with x >= 100 in the top decade";
        return out;
    }
    const double n = static_cast<double>(rx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxx += (rx[i] - mx) * (rx[i] - mx);
        sxy += (rx[i] - mx) * (ry[i] - my);
    }
    out.fit = log_power ? DecayFit::LogPowerLaw : DecayFit::PowerLaw;
    out.fitted_exponent = sxy / sxx;
    out.points_used = rx.size();
    out.note = log_power ? "slope of log h against log log x" : "slope of log h against log x";
    return out;
}

double CovMatrix::min_eigen_ratio() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return ev.minCoeff() / ev.maxCoeff();
}

CovMatrix covariance_matrix(const KernelSpec& spec, std::span<const double> grid) {
    require(!grid.empty(), "non-empty grid for the covariance matrix");
    double previous = 0.0;
    for (double t : grid) {
        require(t > previous, "grid strictly increasing and positive");
        previous = t;
    }
    const auto n = static_cast<Eigen::Index>(grid.size());
    CovMatrix cov{std::vector<double>(grid.begin(), grid.end()), Eigen::MatrixXd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = kernel_eval(spec, grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(j)]);
            cov.entries(i, j) = v;
            cov.entries(j, i) = v;
        }
    }
    return cov;
}

double coupling_process(const PairParams& pair, double t, std::pair<double, double> bm_values) {
    const double p = pair.first.p;
    const double p2 = pair.second.p;
    require(p > 0.0 && p < 0.75 && p2 > 0.0 && p2 < 0.75, "p, p' in (0, 3/4) for the coupling process");
    require(t > 0.0, "t > 0 for the coupling process");
    return std::pow(t, 2.0 * p - 1.0) / std::sqrt(3.0 - 4.0 * p) * bm_values.first -
           std::pow(t, 2.0 * p2 - 1.0) / std::sqrt(3.0 - 4.0 * p2) * bm_values.second;
}

}  // namespace erwlil
