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

#include "erwlil/lil.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>

#include "erwlil/bvn.hpp"
#include "erwlil/errors.hpp"

namespace erwlil {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_log_alpha(double alpha) { return std::log(std::log(alpha)); }

struct PairTables {
    std::vector<double> a;      // a_k, index k-1
    std::vector<double> prob;   // P(A_k)
    std::vector<double> delta;  // delta_j, index j
    std::vector<PhiRule> rules; // phi(delta_j, ., .), index j
};

PairTables pair_tables(const KernelSpec& spec, double alpha, int n) {
    PairTables t;
    t.a.resize(static_cast<std::size_t>(n));
    t.prob.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        t.a[static_cast<std::size_t>(k - 1)] = a_level(alpha, k);
        t.prob[static_cast<std::size_t>(k - 1)] = normal_sf(t.a[static_cast<std::size_t>(k - 1)]);
    }
    t.delta.resize(static_cast<std::size_t>(n));
    t.delta[0] = 1.0;
    const double l0 = l_coefficient(spec, alpha, 0);
    if (!(l0 > 0.0)) throw NumericalError("L_0(alpha) <= 0: invalid kernel or alpha", l0);
    for (int j = 1; j < n; ++j) {
        const double d = l_coefficient(spec, alpha, j) / l0;
        if (!(std::abs(d) < 1.0)) {
            throw NumericalError("|delta_" + std::to_string(j) + "| >= 1: invalid kernel or alpha", d);
        }
        t.delta[static_cast<std::size_t>(j)] = d;
    }
    t.rules.reserve(static_cast<std::size_t>(n));
    t.rules.emplace_back(0.0);
    for (int j = 1; j < n; ++j) t.rules.emplace_back(t.delta[static_cast<std::size_t>(j)]);
    return t;
}

// by_later[l-1] = 2 sum_{k<l} phi(delta_{l-k}, a_k, a_l).
double pair_row(const PairTables& t, int l) {
    double row = 0.0;
    const double al = t.a[static_cast<std::size_t>(l - 1)];
    for (int k = 1; k < l; ++k) {
        const PhiRule& rule = t.rules[static_cast<std::size_t>(l - k)];
        if (rule.delta() == 0.0) continue;
        row += rule(t.a[static_cast<std::size_t>(k - 1)], al);
    }
    return 2.0 * row;
}

std::vector<ERRatioReport> assemble(const PairTables& t, const std::vector<double>& rows,
                                    std::span<const int> ns) {
    std::vector<ERRatioReport> out;
    out.reserve(ns.size());
    double numerator = 0.0, off = 0.0, sum = 0.0;
    int m = 0;
    for (int n : ns) {
        for (; m < n; ++m) {
            const double p = t.prob[static_cast<std::size_t>(m)];
            numerator += p - p * p + rows[static_cast<std::size_t>(m)];
            off += rows[static_cast<std::size_t>(m)];
            sum += p;
        }
        const double denominator = sum * sum;
        out.push_back({n, numerator, denominator, numerator / denominator, off, sum});
    }
    return out;
}

int check_ns(std::span<const int> ns) {
    require(!ns.empty(), "at least one n for the Erdos-Renyi ratio");
    int previous = 1;
    for (int n : ns) {
        require(n > previous, "n values increasing and >= 2 for the Erdos-Renyi ratio");
        previous = n;
    }
    return ns.back();
}

}  // namespace

void GeometricGrid::validate() const {
    require(alpha > 1.0, "alpha > 1 for the geometric grid (got " + std::to_string(alpha) + ")");
    require(n_max >= 2, "n_max >= 2 for the geometric grid");
}

double GeometricGrid::time(int n) const { return std::pow(alpha, n); }
double GeometricGrid::log_time(int n) const { return n * std::log(alpha); }

std::vector<double> GeometricGrid::times() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) out.push_back(time(n));
    return out;
}

double gamma_block(const KernelSpec& spec, const GeometricGrid& grid, int k) {
    grid.validate();
    require(k >= 1 && k < grid.n_max, "1 <= k < n_max for gamma_k");
    const double lo = grid.time(k);
    const double hi = grid.time(k + 1);
    const double g = kernel_eval(spec, hi, hi) - 2.0 * kernel_eval(spec, hi, lo) + kernel_eval(spec, lo, lo);
    if (!(g > 0.0)) throw NumericalError("gamma_" + std::to_string(k) + " <= 0: invalid kernel", g);
    return g;
}

double a_level(double alpha, int k) {
    require(alpha > 1.0, "alpha > 1 for a_k");
    require(k >= 1, "k >= 1 for a_k");
    const double inner = std::log(static_cast<double>(k) + 1.0) + log_log_alpha(alpha);
    require(inner > 0.0, "log log t_{k+1} > 0 for a_k (alpha=" + std::to_string(alpha) +
                             ", k=" + std::to_string(k) + ")");
    return std::sqrt(2.0 * inner);
}

double l_coefficient(const KernelSpec& spec, double alpha, int j) {
    require(alpha > 1.0, "alpha > 1 for L_j");
    require(j >= 0, "j >= 0 for L_j");
    const double la = std::log(alpha);
    const double damp = std::pow(alpha, -spec.rho());
    const double hj = h_value(spec, j * la);
    const double hup = h_value(spec, (j + 1) * la);
    const double hdown = h_value(spec, std::abs(j - 1) * la);
    const double value = hj - damp * (hup + hdown) + damp * damp * hj;
    const double scale = std::abs(hj) * (1.0 + damp * damp) + damp * (std::abs(hup) + std::abs(hdown));
    // h is evaluated through exp of arguments up to (j+1) log alpha, so rounding
    // in the argument grows with it; below that floor the sum is noise. Subnormal
    // terms round in absolute units of denorm_min instead.
    using limits = std::numeric_limits<double>;
    const double conditioning = 1.0 + (j + 1) * std::abs(la);
    const double floor = 64.0 * (limits::epsilon() * conditioning * scale + limits::denorm_min());
    if (std::abs(value) <= floor) return 0.0;
    return value;
}

double delta_corr(const KernelSpec& spec, double alpha, int j) {
    require(j >= 0, "j >= 0 for delta_j");
    const double l0 = l_coefficient(spec, alpha, 0);
    if (!(l0 > 0.0)) throw NumericalError("L_0(alpha) <= 0: invalid kernel or alpha", l0);
    if (j == 0) return 1.0;
    return l_coefficient(spec, alpha, j) / l0;
}

double l0_gap(const KernelSpec& spec, double alpha) {
    return l_coefficient(spec, alpha, 0) - h_value(spec, 0.0);
}

DecayCheck delta_decay_check(const KernelSpec& spec, double alpha, double eta, int j_first, int j_last) {
    require(eta > 0.0, "eta > 0 for the decay check");
    require(j_first >= 1 && j_first <= j_last, "1 <= j_first <= j_last for the decay check");
    DecayCheck out;
    out.eta = eta;
    const double la = std::log(alpha);
    std::size_t argmax = 0;
    for (int j = j_first; j <= j_last; ++j) {
        const double v = std::abs(delta_corr(spec, alpha, j)) * std::pow(j * la, eta);
        out.lags.push_back(j);
        out.scaled.push_back(v);
        if (v > out.max_scaled) {
            out.max_scaled = v;
            argmax = out.scaled.size() - 1;
        }
    }
    out.tail_monotone = true;
    for (std::size_t i = argmax + 1; i < out.scaled.size(); ++i) {
        if (out.scaled[i] > out.scaled[i - 1]) out.tail_monotone = false;
    }
    return out;
}

EventProb event_prob(double a) {
    require(a >= 1.0, "a >= 1 for the Gaussian tail sandwich (got a=" + std::to_string(a) + ")");
    const double density_scale = std::exp(-0.5 * a * a) / (a * std::sqrt(2.0 * std::numbers::pi));
    return {0.5 * density_scale, density_scale, normal_sf(a)};
}

std::vector<ERRatioReport> er_ratio_series(const KernelSpec& spec, double alpha, std::span<const int> ns) {
    const int n = check_ns(ns);
    const auto tables = pair_tables(spec, alpha, n);
    std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
    for (int l = 2; l <= n; ++l) {
        try {
            rows[static_cast<std::size_t>(l - 1)] = pair_row(tables, l);
        } catch (...) {
#pragma omp critical(erwlil_er_ratio)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return assemble(tables, rows, ns);
}

std::vector<ERRatioReport> er_ratio_series_serial(const KernelSpec& spec, double alpha, std::span<const int> ns) {
    const int n = check_ns(ns);
    const auto tables = pair_tables(spec, alpha, n);
    std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
    for (int l = 2; l <= n; ++l) rows[static_cast<std::size_t>(l - 1)] = pair_row(tables, l);
    return assemble(tables, rows, ns);
}

ERRatioReport er_ratio(const KernelSpec& spec, double alpha, int n) {
    const int ns[] = {n};
    return er_ratio_series(spec, alpha, ns).front();
}

double borell_tis_bound(double m_hat, double v, double x) {
    require(v > 0.0, "v > 0 for the Borell-TIS bound");
    require(x > m_hat, "x > m for the Borell-TIS bound");
    return std::exp(-(x - m_hat) * (x - m_hat) / (2.0 * v));
}

BlockQuantities block_quantities(const KernelSpec& spec, const GeometricGrid& grid) {
    grid.validate();
    BlockQuantities b;
    b.grid = grid;
    b.rho = spec.rho();
    b.sigma = std::sqrt(spec.unit_variance());
    b.times = grid.times();
    for (int k = 1; k < grid.n_max; ++k) {
        b.gamma.push_back(gamma_block(spec, grid, k));
        const double inner = std::log(k + 1.0) + log_log_alpha(grid.alpha);
        b.a.push_back(inner > 0.0 ? std::sqrt(2.0 * inner) : kNaN);
    }
    return b;
}

LilTrace lil_statistic(const BlockQuantities& blocks, std::span<const double> path, double t_min) {
    require(path.size() == blocks.times.size(), "one path value per grid time");
    require(t_min > std::numbers::e, "t_min > e so that log log t > 0");
    const std::size_t n = path.size();
    LilTrace tr;
    tr.statistic.assign(n, kNaN);
    tr.running_max_plus.assign(n, kNaN);
    tr.running_max_minus.assign(n, kNaN);
    double mp = kNaN, mm = kNaN;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = blocks.times[i];
        if (t >= t_min) {
            const double scale = std::sqrt(2.0 * std::pow(t, 2.0 * blocks.rho) * std::log(std::log(t)));
            const double s = path[i] / scale;
            tr.statistic[i] = s;
            mp = std::isnan(mp) ? s : std::max(mp, s);
            mm = std::isnan(mm) ? -s : std::max(mm, -s);
        }
        tr.running_max_plus[i] = mp;
        tr.running_max_minus[i] = mm;
    }
    int fired = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const double a = blocks.a[k - 1];
        int event = -1;
        if (!std::isnan(a)) {
            event = (path[k] - path[k - 1] > std::sqrt(blocks.gamma[k - 1]) * a) ? 1 : 0;
            fired += event;
        }
        tr.block_event.push_back(event);
        tr.cumulative_events.push_back(fired);
    }
    return tr;
}

std::vector<LilTrace> lil_statistics(const BlockQuantities& blocks, const Eigen::MatrixXd& paths, double t_min) {
    std::vector<LilTrace> out(static_cast<std::size_t>(paths.rows()));
#pragma omp parallel for schedule(static)
    for (Eigen::Index r = 0; r < paths.rows(); ++r) {
        const Eigen::VectorXd row = paths.row(r).transpose();
        out[static_cast<std::size_t>(r)] = lil_statistic(blocks, std::span<const double>(row.data(), static_cast<std::size_t>(row.size())), t_min);
    }
    return out;
}

}  // namespace erwlil
