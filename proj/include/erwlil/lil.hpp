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

// Geometric-grid machinery behind the lower bound of the iterated-logarithm law:
// block variances gamma_k, levels a_k, increment correlations delta_j, the
// Erdos-Renyi ratio, the Borell-TIS tail bound, and empirical running maxima.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "erwlil/kernel.hpp"

namespace erwlil {

struct GeometricGrid {
    double alpha = 16.0;
    int n_max = 30;

    void validate() const;
    double time(int n) const;
    double log_time(int n) const;
    std::vector<double> times() const;  ///< t_1, ..., t_{n_max}
};

inline constexpr double kDefaultGridRatio = 16.0;

/// Var(X(t_{k+1}) - X(t_k)) for 1 <= k < n_max.
double gamma_block(const KernelSpec& spec, const GeometricGrid& grid, int k);

/// a_k = (2 log log t_{k+1})^{1/2} = (2 (log(k+1) + log log alpha))^{1/2}.
double a_level(double alpha, int k);

/// L_j(alpha) = h(alpha^j) - alpha^{-rho} (h(alpha^{j+1}) + h(alpha^{|j-1|})) + alpha^{-2 rho} h(alpha^j).
/// Values below the rounding floor of the terms, which widens with (j+1) log alpha,
/// are returned as exactly 0.
double l_coefficient(const KernelSpec& spec, double alpha, int j);

/// Correlation of grid increments at lag j: L_j / L_0, with delta_0 = 1.
double delta_corr(const KernelSpec& spec, double alpha, int j);

/// L_0(alpha) - h(1); large magnitude means alpha is too small for the asymptotic regime.
double l0_gap(const KernelSpec& spec, double alpha);

struct DecayCheck {
    double eta = 0.0;
    std::vector<int> lags;
    std::vector<double> scaled;  ///< |delta_j| (j log alpha)^eta
    double max_scaled = 0.0;
    bool tail_monotone = false;  ///< non-increasing from the maximum on
};

DecayCheck delta_decay_check(const KernelSpec& spec, double alpha, double eta, int j_first, int j_last);

struct EventProb {
    double lower = 0.0;
    double upper = 0.0;
    double value = 0.0;
};

/// P(chi > a) for standard normal chi with the Mills-ratio sandwich; a >= 1.
EventProb event_prob(double a);

struct ERRatioReport {
    int n = 0;
    double numerator = 0.0;     ///< sum_{k,l<=n} P(A_k & A_l) - P(A_k) P(A_l)
    double denominator = 0.0;   ///< (sum_{k<=n} P(A_k))^2
    double ratio = 0.0;
    double off_diagonal = 0.0;  ///< part of the numerator with k != l
    double sum_prob = 0.0;      ///< sum_{k<=n} P(A_k)
};

/// Erdos-Renyi ratio at each n in ns (increasing, >= 2). Pair terms use phi
/// with the lag correlation delta_{|k-l|}; OpenMP over the later index.
std::vector<ERRatioReport> er_ratio_series(const KernelSpec& spec, double alpha, std::span<const int> ns);
std::vector<ERRatioReport> er_ratio_series_serial(const KernelSpec& spec, double alpha, std::span<const int> ns);
ERRatioReport er_ratio(const KernelSpec& spec, double alpha, int n);

/// exp(-(x - m)^2 / (2v)) for x > m, v > 0.
double borell_tis_bound(double m_hat, double v, double x);

struct BlockQuantities {
    GeometricGrid grid;
    double rho = 0.0;
    double sigma = 0.0;          ///< R(1,1)^{1/2}
    std::vector<double> times;   ///< t_1..t_{n_max}
    std::vector<double> gamma;   ///< gamma_k, k = 1..n_max-1 (index k-1)
    std::vector<double> a;       ///< a_k, NaN where log log t_{k+1} <= 0
};

BlockQuantities block_quantities(const KernelSpec& spec, const GeometricGrid& grid);

struct LilTrace {
    std::vector<double> statistic;          ///< X(t_n)/sqrt(2 t_n^{2 rho} log log t_n), NaN if untracked
    std::vector<double> running_max_plus;   ///< per grid index, NaN before the first tracked time
    std::vector<double> running_max_minus;
    std::vector<int> block_event;           ///< A_k for k = 1..n_max-1: 1, 0, or -1 when a_k undefined
    std::vector<int> cumulative_events;
};

/// path[n-1] = X(t_n). Times below t_min (and all t <= e) are not tracked.
LilTrace lil_statistic(const BlockQuantities& blocks, std::span<const double> path, double t_min);

/// One trace per row of paths (replica-parallel).
std::vector<LilTrace> lil_statistics(const BlockQuantities& blocks, const Eigen::MatrixXd& paths, double t_min);

}  // namespace erwlil
