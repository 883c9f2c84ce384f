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

// Exact Gaussian samples on a finite grid from a dense Cholesky factor.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "erwlil/kernel.hpp"
#include "erwlil/rng.hpp"

namespace erwlil {

inline constexpr std::size_t kMaxSampleGrid = 4096;

class PathSampler {
public:
    /// Factorizes CovMatrix(spec, grid). If the plain factorization fails, a
    /// diagonal jitter of at most 1e-10 * trace / dim is added and recorded.
    PathSampler(const KernelSpec& spec, std::span<const double> grid);

    const CovMatrix& covariance() const noexcept { return cov_; }
    const Eigen::MatrixXd& factor() const noexcept { return factor_; }
    double jitter() const noexcept { return jitter_; }
    std::size_t size() const noexcept { return cov_.grid.size(); }

    /// Rows are replicas first_replica, ..., first_replica + count - 1; columns follow the grid.
    /// Grid point i of replica r uses standard_normal({seed, r, stream}, i).
    Eigen::MatrixXd sample(std::uint64_t seed, std::uint32_t first_replica, std::uint32_t count,
                           std::uint32_t stream = 0) const;

    /// Replica-by-replica triangular products; reference for sample().
    Eigen::MatrixXd sample_serial(std::uint64_t seed, std::uint32_t first_replica, std::uint32_t count,
                                  std::uint32_t stream = 0) const;

private:
    CovMatrix cov_;
    Eigen::MatrixXd factor_;
    double jitter_ = 0.0;
};

/// key.replica is the first replica index.
Eigen::MatrixXd sample_paths(const KernelSpec& spec, std::span<const double> grid, std::uint32_t replicas,
                             const StreamKey& key);

/// Y_n = t_n^{-rho} X(t_n) on a geometric grid t_n = alpha^n.
std::vector<double> lamperti(const KernelSpec& spec, std::span<const double> times,
                             std::span<const double> path);

}  // namespace erwlil
