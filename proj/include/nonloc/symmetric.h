// Copyright 2026 The nonloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NONLOC_SYMMETRIC_H
#define NONLOC_SYMMETRIC_H

#include <vector>

#include "nonloc/measure.h"
#include "nonloc/poly.h"
#include "nonloc/qstate.h"

namespace nonloc {

// Constructive Hardy settings for permutation-symmetric states. Party 0 gets
// the pair (|0> + x1*|1>, |0> + y1*|1>), every other party the shared pair
// (|0> + x*|1>, |0> + y*|1>). Projecting the last n - 2 parties on <a| leaves
// the two-qubit state c0|00> + c1(|01> + |10>) + c2|11>.

struct CCoeffs {
    cplx c0, c1, c2;
};

/// c_i = sum_{k=0}^{n-2} h_{k+i} x^k C(n-2, k), by Horner.
CCoeffs c_coeffs(const SymmetricState &s, cplx x);

/// c_i as polynomials in x (i = 0, 1, 2).
Poly c_poly(const SymmetricState &s, int i);

/// c1^2 - c0 c2 as a polynomial in x.
Poly degeneracy_poly(const SymmetricState &s);

/// Roots of c1^2 - c0 c2, where the projected pair state is product or zero.
/// Throws IdenticallyZeroPolynomial when the polynomial vanishes (product
/// state).
std::vector<cplx> degenerate_x_roots(const SymmetricState &s);

/// F(x, x*) restricted to x = t e^{iw}, as a complex polynomial in real t.
Poly f_poly(const SymmetricState &s, double w);

/// Nonnegative t with F(t e^{iw}) = 0, ascending. Throws IdenticallyZeroF
/// when F vanishes for every t at this phase.
std::vector<double> f_poly_roots(const SymmetricState &s, double w);

/// h0 h2* e^{-2iw} is not real (or h2 = 0).
bool phase_admissible(const SymmetricState &s, double w);
/// Diagnostic for the alternative reading h0* h2 e^{-iw} not real.
bool phase_admissible_single(const SymmetricState &s, double w);

/// pi/2 if h2 = 0, else a phase putting h0 h2* e^{-2iw} on the imaginary
/// axis (shifted by pi/8 steps if F would still vanish identically).
double phase_pick(const SymmetricState &s);

struct SymmetricSolution {
    cplx x, y1, y, x1;
    MeasurementSettings settings;
    double p_success = 0;
    std::vector<cplx> excluded_x;
    /// Basis change applied before solving; settings are already mapped back
    /// to the input basis. Identity for solve_settings.
    Mat2 frame = Mat2::Identity();
};

/// Throws DegenerateX within 1e-6 of an excluded x and SingularDenominator
/// when a denominator drops below 1e-12.
SymmetricSolution solve_settings(const SymmetricState &s, cplx x);

/// Generalized GHZ success probability of the closed-form settings.
double ghz_closed_form(int n, double theta, cplx x);
/// W-state success probability of the closed-form settings.
double w_closed_form(int n, cplx x);

/// Full pipeline: magic basis, admissible phase, |x| scan starting at 1 with
/// a 0.05 margin from every excluded modulus, then back to the input basis.
/// The returned settings pass the test on the input state.
SymmetricSolution solve_auto(const SymmetricState &s);

}  // namespace nonloc

#endif  // NONLOC_SYMMETRIC_H
