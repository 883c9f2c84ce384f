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

// Self-similar Gaussian covariance kernels R(s,t) with R(cs,ct) = c^{2 rho} R(s,t).
//
// Every kernel is also available through its profile h(x) = x^{-rho} R(1,x),
// x >= 1, evaluated from log x so that geometric-grid quantities at
// x = alpha^j stay finite for large j.

#include <string>
#include <utility>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "erwlil/duo.hpp"

namespace erwlil {

struct FbmKernel {
    double hurst;
};

/// Generalized Riemann-Liouville FBM, X(t) = int_0^t (t-u)^beta u^{-gamma/2} dB(u).
struct RlFbmKernel {
    double beta;
    double gamma;
};

/// Covariance of the Gaussian limit of S_n - S'_n for two diffusive walks.
struct ErwDiffKernel {
    double p;
    double p2;
};

/// Lamperti-stationary kernel whose spectral measure is the symmetric stable law.
struct StableSpectralKernel {
    double alpha;
    double r11 = 1.0;
};

class KernelSpec {
public:
    using Variant = std::variant<FbmKernel, RlFbmKernel, ErwDiffKernel, StableSpectralKernel>;

    static KernelSpec fbm(double hurst);
    static KernelSpec rlfbm(double beta, double gamma);
    static KernelSpec erw_diff(double p, double p2);
    static KernelSpec stable_spectral(double alpha, double r11 = 1.0);

    const Variant& variant() const noexcept { return variant_; }
    double rho() const noexcept { return rho_; }
    /// R(1,1)
    double unit_variance() const;
    /// Short name: fbm, rlfbm, erwdiff, stable.
    std::string name() const;
    /// Name plus parameters, for logs and manifests.
    std::string describe() const;
    /// True when kernel_eval integrates numerically.
    bool uses_quadrature() const noexcept;

private:
    explicit KernelSpec(Variant v, double rho) : variant_(std::move(v)), rho_(rho) {}

    Variant variant_;
    double rho_;
};

inline constexpr double kKernelQuadratureTolerance = 1e-10;

double kernel_eval(const KernelSpec& spec, double s, double t);

/// h(x) = x^{-rho} R(1,x) at x = exp(log_x), log_x >= 0.
double h_value(const KernelSpec& spec, double log_x);

/// max over pairs of |R(cs,ct) - c^{2 rho} R(s,t)| / |c^{2 rho} R(s,t)|.
double self_similarity_check(const KernelSpec& spec, double c,
                             std::span<const std::pair<double, double>> pairs);

enum class DecayFit { PowerLaw, LogPowerLaw, NotFitted };

struct HProfile {
    std::vector<double> xs;
    std::vector<double> hs;
    DecayFit fit = DecayFit::NotFitted;
    double fitted_exponent = 0.0;  ///< NaN when not fitted
    std::size_t points_used = 0;
    std::string note;
};

/// Smallest x entering a decay fit.
inline constexpr double kDecayFitMinX = 1e2;

/// h on xs plus a least-squares decay exponent over the top decade of the regressor:
/// log h against log x, or against log log x for the stable spectral kernel.
HProfile h_profile(const KernelSpec& spec, std::span<const double> xs);

struct CovMatrix {
    std::vector<double> grid;
    Eigen::MatrixXd entries;

    /// lambda_min / lambda_max
    double min_eigen_ratio() const;
};

CovMatrix covariance_matrix(const KernelSpec& spec, std::span<const double> grid);

/// t^{2p-1}/sqrt(3-4p) B(t^{3-4p}) - t^{2p'-1}/sqrt(3-4p') B'(t^{3-4p'}),
/// given bm_values = (B(t^{3-4p}), B'(t^{3-4p'})).
double coupling_process(const PairParams& pair, double t, std::pair<double, double> bm_values);

}  // namespace erwlil
