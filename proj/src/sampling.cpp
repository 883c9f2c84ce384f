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

#include "erwlil/sampling.hpp"

#include <cmath>
#include <string>

#include "erwlil/errors.hpp"

namespace erwlil {

namespace {

// Rejects oversized grids before any kernel evaluation happens.
std::span<const double> guarded(std::span<const double> grid) {
    require(grid.size() <= kMaxSampleGrid,
            "grid length <= " + std::to_string(kMaxSampleGrid) + " for dense sampling");
    return grid;
}

}  // namespace

PathSampler::PathSampler(const KernelSpec& spec, std::span<const double> grid)
    : cov_(covariance_matrix(spec, guarded(grid))) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov_.entries);
    if (llt.info() != Eigen::Success) {
        const double cap = 1e-10 * cov_.entries.trace() / static_cast<double>(size());
        for (double level = cap * 1e-4; level <= cap * (1.0 + 1e-12); level *= 10.0) {
            Eigen::MatrixXd jittered = cov_.entries;
            jittered.diagonal().array() += level;
            llt.compute(jittered);
            if (llt.info() == Eigen::Success) {
                jitter_ = level;
                break;
            }
        }
        if (llt.info() != Eigen::Success) {
            throw NumericalError("Cholesky factorization failed after diagonal jitter", cap);
        }
    }
    factor_ = llt.matrixL();
}

Eigen::MatrixXd PathSampler::sample(std::uint64_t seed, std::uint32_t first_replica, std::uint32_t count,
                                    std::uint32_t stream) const {
    const auto dim = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd normals(dim, static_cast<Eigen::Index>(count));
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(count); ++r) {
        const StreamKey key{seed, first_replica + static_cast<std::uint32_t>(r), stream};
        for (Eigen::Index i = 0; i < dim; ++i) normals(i, r) = standard_normal(key, static_cast<std::uint64_t>(i));
    }
    Eigen::MatrixXd paths = factor_.triangularView<Eigen::Lower>() * normals;
    return paths.transpose();
}

Eigen::MatrixXd PathSampler::sample_serial(std::uint64_t seed, std::uint32_t first_replica, std::uint32_t count,
                                           std::uint32_t stream) const {
    const auto dim = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd out(static_cast<Eigen::Index>(count), dim);
    std::vector<double> z(static_cast<std::size_t>(dim));
    for (std::uint32_t r = 0; r < count; ++r) {
        const StreamKey key{seed, first_replica + r, stream};
        for (Eigen::Index i = 0; i < dim; ++i) z[static_cast<std::size_t>(i)] = standard_normal(key, static_cast<std::uint64_t>(i));
        for (Eigen::Index i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (Eigen::Index j = 0; j <= i; ++j) acc += factor_(i, j) * z[static_cast<std::size_t>(j)];
            out(static_cast<Eigen::Index>(r), i) = acc;
        }
    }
    return out;
}

Eigen::MatrixXd sample_paths(const KernelSpec& spec, std::span<const double> grid, std::uint32_t replicas,
                             const StreamKey& key) {
    return PathSampler(spec, grid).sample(key.seed, key.replica, replicas, key.stream);
}

std::vector<double> lamperti(const KernelSpec& spec, std::span<const double> times,
                             std::span<const double> path) {
    require(times.size() == path.size(), "path and times of equal length for the Lamperti transform");
    require(times.size() >= 2 && times.front() > 0.0, "at least two positive grid times");
    const double ratio = times[1] / times[0];
    require(ratio > 1.0, "geometric grid ratio > 1");
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double r = times[i] / times[i - 1];
        require(std::abs(r - ratio) <= 1e-12 * ratio, "geometric grid t_n = alpha^n for the Lamperti transform");
    }
    std::vector<double> y(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) y[i] = std::pow(times[i], -spec.rho()) * path[i];
    return y;
}

}  // namespace erwlil
