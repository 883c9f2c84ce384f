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

#include <array>

// Bivariate standard normal quadrant probabilities.
//
// For Z_delta ~ N(0, [[1, delta], [delta, 1]]) and R_{a,b} = [a,inf) x [b,inf),
//   phi(delta, a, b) = P(Z_delta in R_{a,b}) - P(Z_0 in R_{a,b})
//                    = int_0^delta psi(t, a, b) dt,
// where psi is the bivariate density. The integral is one-dimensional, which
// is what makes the pair terms of the Borel-Cantelli ratio cheap.

namespace erwlil {

struct BvnQuery {
    double delta = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Upper tail 1 - Phi(x) via erfc.
double normal_sf(double x);

/// Bivariate standard normal density with correlation delta at (x, y).
double psi(double delta, double x, double y);

inline constexpr double kPhiAbsTolerance = 1e-12;

/// Quadrant-probability shift relative to independence.
double phi(const BvnQuery& query);

/// phi(delta, ., .) for one fixed delta, with the quadrature nodes mapped once.
///
/// Evaluates a single Gauss-Kronrod 15 panel and checks it against the
/// embedded Gauss 7 rule; falls back to adaptive phi() when the two disagree
/// by more than kPhiAbsTolerance. Results match phi() to that tolerance.
class PhiRule {
public:
    explicit PhiRule(double delta);

    double delta() const { return delta_; }
    double operator()(double a, double b) const;

private:
    static constexpr int kNodes = 15;
    double delta_;
    double sign_ = 1.0;
    std::array<double, kNodes> quad_{};   // 1 / (2 cos^2 theta)
    std::array<double, kNodes> cross_{};  // sin theta / cos^2 theta
    std::array<double, kNodes> kronrod_{};
    std::array<double, kNodes> gauss_{};
};

/// Closed-form bound on |phi| for a, b > 0.
double phi_bound(const BvnQuery& query);

/// P(Z_delta in R_{a,b}) = normal_sf(a) normal_sf(b) + phi(delta, a, b).
double quadrant_prob(double delta, double a, double b);

}  // namespace erwlil
