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

namespace erwlil {

/// Density of the symmetric alpha-stable law with characteristic function
/// exp(-|xi|^alpha), 0 < alpha <= 2.
///
/// |x| <= 20 uses the Fourier cosine integral (1/pi) int_0^inf cos(x xi) exp(-xi^alpha) dxi
/// evaluated by Ooura's oscillatory quadrature; larger |x| uses the Bergstrom
/// tail expansion, which converges for alpha < 1 and is asymptotic for alpha > 1.
/// alpha == 2 is the N(0, 2) density in closed form.
double stable_density(double alpha, double x);

/// Quadrature route only, exposed so tests can compare the two routes.
double stable_density_quadrature(double alpha, double x);

/// Tail-series route only; requires |x| large enough for the series to settle.
double stable_density_series(double alpha, double x);

/// f(0) = Gamma(1 + 1/alpha) / pi.
double stable_density_at_zero(double alpha);

inline constexpr double kStableSeriesSwitch = 20.0;

}  // namespace erwlil
