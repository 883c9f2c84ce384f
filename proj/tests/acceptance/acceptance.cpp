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

// Acceptance run: one PASS/FAIL line per criterion, each with its measured
// values, the seed used and the wall-clock time against its budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "checks.hpp"
#include "erwlil/bvn.hpp"
#include "erwlil/duo.hpp"
#include "erwlil/erw.hpp"
#include "erwlil/kernel.hpp"
#include "erwlil/lil.hpp"
#include "erwlil/replicas.hpp"
#include "erwlil/sampling.hpp"

using namespace erwlil;

namespace {

constexpr std::uint64_t kSeed = 20261019;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    // Records one sub-check; the criterion passes only if all do.
    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        detail << "\n      [" << (ok ? "ok  " : "FAIL") << "] " << what;
    }
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// ---------------------------------------------------------------------------

void erw_exactness(Verdict& v) {
    const WalkParams w{0.75, 0.5};
    const std::int64_t h[] = {10};
    const auto table = walk_positions(w, h, kSeed, 0, 100000);
    std::vector<double> counts(11, 0.0);
    for (const auto& row : table) counts[static_cast<std::size_t>((row[0] + 10) / 2)] += 1.0;
    const auto chi = testing::chi_square(counts, exact_law(w, 10).pmf);
    v.check(chi.p_value > 1e-3, fmt("S_10 at p=0.75, 1e5 replicas: chi2=%.3f df=%.0f p=%.4f > 1e-3", chi.statistic,
                                    static_cast<double>(chi.dof), chi.p_value));
}

void diffusive_variance(Verdict& v) {
    const double ratio = exact_moments({0.6, 0.5}, 10000).variance / 1e4;
    const double target = 5.0 / 3.0;
    v.check(std::abs(ratio - target) <= 0.02 * target,
            fmt("Var(S_n)/n at n=1e4, p=0.6: %.10f vs 5/3, rel. gap %.2e <= 0.02", ratio, std::abs(ratio / target - 1.0)));
}

void lil_constant(Verdict& v) {
    const PairParams srw{{0.5, 0.5}, {0.5, 0.5}};
    v.check(lil_constant_theory(srw) == std::sqrt(2.0), "lil_constant_theory(0.5, 0.5) == sqrt(2) exactly");
    PairRunSpec spec{srw, {1000000}, doubling_horizons(16, 1000000)};
    std::vector<double> stats;
    for (const auto& r : run_pair_replicas(spec, kSeed, 0, 200)) stats.push_back(r[0].stat_plus);
    const double med = median(stats);
    const double s2 = std::sqrt(2.0);
    v.check(med >= 0.5 * s2 && med <= 1.0 * s2,
            fmt("median running max over 200 replicas at 1e6 (seed %.0f): %.4f = %.4f sqrt(2), band [0.5, 1.0] sqrt(2)",
                static_cast<double>(kSeed), med, med / s2));
}

void collision_trichotomy(Verdict& v) {
    const PairParams srw{{0.5, 0.5}, {0.5, 0.5}};
    const double oracle = expected_collisions(srw, 10000);
    const double rule = 2.0 * std::sqrt(1e4 / std::numbers::pi);
    v.check(std::abs(oracle - rule) <= 0.1 * rule,
            fmt("exact convolution oracle %.4f vs 2 sqrt(N/pi) = %.4f (within 10%%)", oracle, rule));
    double total = 0.0;
    for (const auto& r : run_pair_replicas({srw, {10000}, {}}, kSeed, 0, 1000)) total += static_cast<double>(r[0].count);
    const double mean = total / 1000.0;
    v.check(std::abs(mean - oracle) <= 0.1 * oracle,
            fmt("mean collisions at N=1e4 over 1000 replicas: %.3f vs oracle %.3f (within 10%%)", mean, oracle));

    const PairParams mixed{{0.9, 0.5}, {0.5, 0.5}};
    int stable = 0;
    for (const auto& r : run_pair_replicas({mixed, {100000, 200000}, {}}, kSeed, 0, 200)) {
        stable += r[0].last_collision == r[1].last_collision;
    }
    v.check(stable >= 180, fmt("(0.9, 0.5): last collision unchanged from 1e5 to 2e5 in %.0f/200 replicas (>= 0.9)",
                               static_cast<double>(stable)));
}

void kernel_identities(Verdict& v) {
    std::mt19937_64 g(kSeed);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 100; ++i) pairs.emplace_back(u(g), u(g));
    const std::vector<KernelSpec> specs = {KernelSpec::fbm(0.3), KernelSpec::fbm(0.7), KernelSpec::erw_diff(0.5, 0.6),
                                           KernelSpec::rlfbm(1.0, 0.5), KernelSpec::stable_spectral(1.0)};
    for (const auto& spec : specs) {
        const double dev = self_similarity_check(spec, 3.0, pairs);
        const double tol = spec.uses_quadrature() ? 1e-8 : 1e-12;
        v.check(dev < tol, spec.describe() + fmt(": self-similarity deviation %.2e < %.0e", dev, tol));
    }

    std::vector<double> xs;
    for (int i = 0; i <= 60; ++i) xs.push_back(std::pow(10.0, i / 10.0));
    for (double hurst : {0.3, 0.5, 0.7}) {
        const auto prof = h_profile(KernelSpec::fbm(hurst), xs);
        const double want = -(1.0 - hurst);
        v.check(std::abs(prof.fitted_exponent - want) <= 0.02,
                fmt("fbm(H=%.1f): fitted h-decay exponent %.4f vs -(1-H) = %.2f +- 0.02", hurst, prof.fitted_exponent,
                    want));
    }
    for (double gamma : {0.0, 0.5}) {
        const auto prof = h_profile(KernelSpec::rlfbm(0.0, gamma), xs);
        const double want = -(1.0 - gamma) / 2.0;
        v.check(std::abs(prof.fitted_exponent - want) <= 0.02,
                fmt("rlfbm(beta=0, gamma=%.1f): fitted exponent %.4f vs -(1-gamma)/2 = %.3f +- 0.02", gamma,
                    prof.fitted_exponent, want));
    }
}

void phi_identity(Verdict& v) {
    // One sample of 1e7 pairs (X, Y) drives all nine points. For each point the
    // per-draw difference 1{X>a}(1{dX + sqrt(1-d^2) Y > b} - 1{Y > b}) has mean phi.
    struct Point { double delta, a, b; };
    std::vector<Point> points;
    for (double d : {-0.5, 0.3, 0.8}) {
        for (const auto& [a, b] : {std::pair{1.0, 2.0}, std::pair{0.0, 0.5}, std::pair{-0.5, 1.0}}) {
            points.push_back({d, a, b});
        }
    }
    constexpr std::uint32_t n = 10000000;
    std::vector<double> sum(points.size(), 0.0), sum_sq(points.size(), 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        const StreamKey key{kSeed, i, 7};
        const double x = standard_normal(key, 0);
        const double y = standard_normal(key, 1);
        for (std::size_t k = 0; k < points.size(); ++k) {
            const auto& p = points[k];
            if (x <= p.a) continue;
            const double d = static_cast<double>(p.delta * x + std::sqrt(1.0 - p.delta * p.delta) * y > p.b) -
                             static_cast<double>(y > p.b);
            sum[k] += d;
            sum_sq[k] += d * d;
        }
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double mean = sum[k] / n;
        const double se = std::sqrt((sum_sq[k] / n - mean * mean) / n);
        const double exact = phi({points[k].delta, points[k].a, points[k].b});
        std::ostringstream what;
        what << "phi(" << points[k].delta << ", " << points[k].a << ", " << points[k].b << ") = "
             << fmt("%.6f, MC %.6f, |gap|/se = %.2f <= 4", exact, mean, std::abs(mean - exact) / se);
        v.check(std::abs(mean - exact) <= 4.0 * se, what.str());
    }
    for (double d : {0.1, 0.5, 0.9}) {
        const double gap = std::abs(phi({d, 0.0, 0.0}) - std::asin(d) / (2.0 * std::numbers::pi));
        v.check(gap < 1e-10, fmt("arcsine law at delta=%.1f: |phi - asin(delta)/2pi| = %.1e < 1e-10", d, gap));
    }
}

void phi_bound_grid(Verdict& v) {
    int points = 0, held = 0;
    double worst = 0.0;
    for (double d : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) {
        for (double a : {0.5, 1.0, 2.0, 4.0, 6.0, 8.0}) {
            for (double b : {0.5, 1.0, 2.0, 4.0, 6.0, 8.0}) {
                const double ph = std::abs(phi({d, a, b}));
                const double bound = phi_bound({d, a, b});
                ++points;
                held += ph <= bound;
                if (bound > 0.0) worst = std::max(worst, ph / bound);
            }
        }
    }
    v.check(held == points, fmt("|phi| <= bound at %.0f/%.0f grid points (max |phi|/bound %.4f)",
                                static_cast<double>(held), static_cast<double>(points), worst));
}

void borell_tis(Verdict& v) {
    constexpr int kGrid = 1024;
    constexpr std::uint32_t kReplicas = 100000, kChunk = 5000;
    std::vector<double> grid;
    for (int i = 1; i <= kGrid; ++i) grid.push_back(static_cast<double>(i) / kGrid);
    const PathSampler sampler(KernelSpec::fbm(0.5), grid);
    std::vector<double> sup;
    sup.reserve(kReplicas);
    for (std::uint32_t first = 0; first < kReplicas; first += kChunk) {
        const Eigen::MatrixXd paths = sampler.sample(kSeed, first, kChunk);
        for (Eigen::Index r = 0; r < paths.rows(); ++r) sup.push_back(std::max(0.0, paths.row(r).maxCoeff()));
    }
    double m_hat = 0.0;
    for (double s : sup) m_hat += s;
    m_hat /= static_cast<double>(sup.size());
    // Sampling at spacing D misses part of the excursion; the discrete maximum
    // behaves like the continuous one shifted down by 0.5826 sqrt(D).
    const double shift = 0.5826 * std::sqrt(1.0 / kGrid);
    v.check(true, fmt("m_hat = %.5f from %.0f replicas on a %.0f-point grid", m_hat, kReplicas, kGrid));
    for (double dx = 0.5; dx <= 3.0 + 1e-9; dx += 0.5) {
        const double x = m_hat + dx;
        double hits = 0.0;
        for (double s : sup) hits += s > x;
        const double p = hits / kReplicas;
        const double bound = borell_tis_bound(m_hat, 1.0, x);
        const double oracle = 2.0 * normal_sf(x + shift);
        const double sd_bound = std::sqrt(std::max(p * (1.0 - p), 1.0 / kReplicas) / kReplicas);
        const double sd_oracle = std::sqrt(oracle * (1.0 - oracle) / kReplicas);
        v.check(p <= bound + 4.0 * sd_bound, fmt("x = m+%.1f: P(sup > x) = %.3e <= bound %.3e + 4 MC err", dx, p, bound));
        v.check(std::abs(p - oracle) <= 4.0 * sd_oracle,
                fmt("x = m+%.1f: P(sup > x) = %.3e vs reflection oracle %.3e within 4 sigma", dx, p, oracle));
    }
}

void erdos_renyi(Verdict& v) {
    const int ns[] = {100, 1000, 10000};
    const auto reps = er_ratio_series(KernelSpec::erw_diff(0.5, 0.6), 16.0, ns);
    std::ostringstream ratios;
    for (const auto& r : reps) ratios << " " << r.ratio;
    v.check(reps[1].ratio < reps[0].ratio && reps[2].ratio < reps[1].ratio,
            "erwdiff(0.5, 0.6), alpha=16: ratio decreasing over n = 1e2, 1e3, 1e4:" + ratios.str());
    double lo = 1e300, hi = 0.0;
    for (const auto& r : reps) {
        const double s = r.numerator / std::sqrt(std::log(static_cast<double>(r.n)));
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    v.check(lo > 0.0 && hi / lo < 10.0, fmt("numerator / sqrt(log n) in [%.4f, %.4f], max/min %.3f < 10", lo, hi, hi / lo));

    const auto bm = KernelSpec::fbm(0.5);
    double worst = 0.0;
    for (int j = 1; j < 10000; ++j) worst = std::max(worst, std::abs(delta_corr(bm, 16.0, j)));
    v.check(worst <= 1e-12, fmt("Brownian motion: max_j |delta_j| over j < 1e4 = %.1e <= 1e-12", worst));
    const auto bm_rep = er_ratio(bm, 16.0, 10000);
    v.check(bm_rep.off_diagonal == 0.0, fmt("Brownian motion: off-diagonal numerator at n=1e4 = %.1e (exactly 0)",
                                            bm_rep.off_diagonal));
}

void block_order(Verdict& v) {
    const GeometricGrid g{16.0, 30};
    for (const auto& spec : {KernelSpec::fbm(0.3), KernelSpec::rlfbm(1.0, 0.5), KernelSpec::erw_diff(0.5, 0.6),
                             KernelSpec::stable_spectral(1.0)}) {
        const double band = 3.0 * std::pow(16.0, -spec.rho());
        double worst = 0.0;
        for (int k = 10; k < g.n_max; ++k) {
            const double ratio =
                gamma_block(spec, g, k) / (spec.unit_variance() * std::pow(g.time(k + 1), 2.0 * spec.rho()));
            worst = std::max(worst, std::abs(ratio - 1.0));
        }
        v.check(worst <= band, spec.describe() + fmt(": max_k>=10 |gamma_k/(sigma^2 t^2rho) - 1| = %.4f <= 3 alpha^-rho = %.4f",
                                                     worst, band));
    }
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Verdict&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "ERW exactness (Monte Carlo pmf of S_10 vs exact law)", 10, erw_exactness},
        {2, "Diffusive variance Var(S_n)/n -> 1/(3-4p)", 5, diffusive_variance},
        {3, "Distance LIL constant and running-max band", 300, lil_constant},
        {4, "Collision counts and the superdiffusive trichotomy", 120, collision_trichotomy},
        {5, "Kernel self-similarity and h-decay exponents", 60, kernel_identities},
        {6, "phi integral identity vs Monte Carlo and the arcsine law", 120, phi_identity},
        {7, "|phi| <= phi_bound on the (delta, a, b) grid", 1, phi_bound_grid},
        {8, "Borell-TIS bound and reflection oracle for Brownian sup", 120, borell_tis},
        {9, "Erdos-Renyi ratio and Brownian off-diagonal terms", 60, erdos_renyi},
        {10, "Block variance order gamma_k ~ sigma^2 t_{k+1}^{2 rho}", 1, block_order},
    };
    int failed = 0;
    std::printf("acceptance run, seed %llu, %d worker thread(s)\n", static_cast<unsigned long long>(kSeed),
                set_worker_threads(0));
    for (const auto& c : criteria) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        c.body(v);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        v.check(secs < c.budget_seconds, fmt("runtime %.2f s < %.0f s", secs, c.budget_seconds));
        failed += !v.pass;
        std::printf("%s criterion %2d: %s%s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
