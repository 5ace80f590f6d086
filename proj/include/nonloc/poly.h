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

#ifndef NONLOC_POLY_H
#define NONLOC_POLY_H

#include <complex>
#include <span>
#include <vector>

namespace nonloc {

/// Dense complex polynomial, coefficient i multiplies x^i.
class Poly {
   public:
    Poly() = default;
    explicit Poly(std::vector<std::complex<double>> coeffs) : c_(std::move(coeffs)) {
    }

    std::span<const std::complex<double>> coeffs() const {
        return c_;
    }
    std::complex<double> operator()(std::complex<double> x) const;
    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator*(const Poly &o) const;
    Poly operator*(std::complex<double> s) const;
    /// Multiplies by x^k.
    Poly shifted(int k) const;
    /// Coefficientwise conjugate; equals conj(p(t)) for real t.
    Poly conj() const;
    Poly derivative() const;

    /// Index of the highest coefficient above trim * max(1, max|c_i|), or -1
    /// when every coefficient is below it.
    int degree(double trim = 1e-12) const;

   private:
    std::vector<std::complex<double>> c_;
};

/// Complex roots from the eigenvalues of the companion matrix, after dropping
/// negligible leading coefficients, each refined by a few Newton steps.
/// A polynomial of degree zero has no roots; an identically negligible one
/// returns no roots either (callers decide what that means).
std::vector<std::complex<double>> polynomial_roots(const Poly &p, double trim = 1e-12);

}  // namespace nonloc

#endif  // NONLOC_POLY_H
