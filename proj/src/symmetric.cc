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

#include "nonloc/symmetric.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nonloc/error.h"
#include "nonloc/hardy.h"

namespace nonloc {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double w) {
    w = std::fmod(w, 2 * kPi);
    return w < 0 ? w + 2 * kPi : w;
}

void check_symmetric_n(const SymmetricState &s) {
    if (s.n() < 3) {
        throw InvalidArgument("the symmetric construction needs n >= 3");
    }
}

}  // namespace

CCoeffs c_coeffs(const SymmetricState &s, cplx x) {
    check_symmetric_n(s);
    const int m = s.n() - 2;
    cplx acc[3] = {0, 0, 0};
    for (int k = m; k >= 0; k--) {
        double w = binomial(m, k);
        for (int i = 0; i < 3; i++) {
            acc[i] = acc[i] * x + w * s.h(k + i);
        }
    }
    return {acc[0], acc[1], acc[2]};
}

Poly c_poly(const SymmetricState &s, int i) {
    check_symmetric_n(s);
    const int m = s.n() - 2;
    std::vector<cplx> c(static_cast<std::size_t>(m + 1));
    for (int k = 0; k <= m; k++) {
        c[static_cast<std::size_t>(k)] = binomial(m, k) * s.h(k + i);
    }
    return Poly(std::move(c));
}

Poly degeneracy_poly(const SymmetricState &s) {
    Poly c0 = c_poly(s, 0), c1 = c_poly(s, 1), c2 = c_poly(s, 2);
    return c1 * c1 - c0 * c2;
}

std::vector<cplx> degenerate_x_roots(const SymmetricState &s) {
    Poly d = degeneracy_poly(s);
    if (d.degree() < 0) {
        throw IdenticallyZeroPolynomial("c1^2 - c0 c2 vanishes for every x; the state is a product state");
    }
    return polynomial_roots(d);
}

Poly f_poly(const SymmetricState &s, double w) {
    const int m = s.n() - 2;
    Poly c[3];
    for (int i = 0; i < 3; i++) {
        std::vector<cplx> coeffs(static_cast<std::size_t>(m + 1));
        for (int k = 0; k <= m; k++) {
            coeffs[static_cast<std::size_t>(k)] = binomial(m, k) * s.h(k + i) * std::polar(1.0, k * w);
        }
        c[i] = Poly(std::move(coeffs));
    }
    Poly cc[3] = {c[0].conj(), c[1].conj(), c[2].conj()};
    Poly linear = (c[2] * cc[2] - c[0] * cc[0]).shifted(1) * std::polar(1.0, w);
    Poly quadratic = (cc[1] * c[2] + cc[0] * c[1]).shifted(2) * std::polar(1.0, 2 * w);
    return c[1] * cc[2] + c[0] * cc[1] + linear - quadratic;
}

std::vector<double> f_poly_roots(const SymmetricState &s, double w) {
    check_symmetric_n(s);
    Poly f = f_poly(s, w);
    if (f.degree() < 0) {
        throw IdenticallyZeroF("F vanishes for every |x| at this phase");
    }
    std::vector<double> out;
    for (cplx z : polynomial_roots(f)) {
        if (std::abs(z.imag()) > 1e-6 * (1 + std::abs(z)) || z.real() < -1e-9) {
            continue;
        }
        out.push_back(std::max(0.0, z.real()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              out.end());
    return out;
}

bool phase_admissible(const SymmetricState &s, double w) {
    cplx h0 = s.h(0), h2 = s.h(2);
    if (std::abs(h2) <= 1e-12) {
        return true;
    }
    cplx v = h0 * std::conj(h2) * std::polar(1.0, -2 * w);
    return std::abs(v.imag()) > 1e-9 * std::abs(v);
}

bool phase_admissible_single(const SymmetricState &s, double w) {
    cplx h0 = s.h(0), h2 = s.h(2);
    if (std::abs(h2) <= 1e-12) {
        return true;
    }
    cplx v = std::conj(h0) * h2 * std::polar(1.0, -w);
    return std::abs(v.imag()) > 1e-9 * std::abs(v);
}

double phase_pick(const SymmetricState &s) {
    check_symmetric_n(s);
    cplx h0 = s.h(0), h2 = s.h(2);
    double w = std::abs(h2) <= 1e-12 ? kPi / 2 : wrap_phase((std::arg(h0 * std::conj(h2)) + kPi / 2) / 2);
    for (int attempt = 0; attempt < 16; attempt++) {
        if (phase_admissible(s, w) && f_poly(s, w).degree() >= 0) {
            return w;
        }
        w = wrap_phase(w + kPi / 8);
    }
    throw IdenticallyZeroF("no admissible phase found");
}

SymmetricSolution solve_settings(const SymmetricState &s, cplx x) {
    check_symmetric_n(s);
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw InvalidArgument("x must be finite");
    }
    std::vector<cplx> excluded = degenerate_x_roots(s);
    for (cplx r : excluded) {
        if (std::abs(x - r) < 1e-5 * std::max(1.0, std::abs(r))) {
            throw DegenerateX("excluded x: projected pair state is product or zero");
        }
    }
    const double w = std::abs(x) > 0 ? std::arg(x) : 0.0;
    std::vector<double> f_roots;
    try {
        f_roots = f_poly_roots(s, w);
    } catch (const IdenticallyZeroF &) {
        throw DegenerateX("excluded x: success probability vanishes for every |x| at this phase");
    }
    for (double t : f_roots) {
        excluded.push_back(std::polar(t, w));
        if (std::abs(std::abs(x) - t) < 1e-5 * std::max(1.0, t)) {
            throw DegenerateX("excluded x: success probability vanishes at this |x|");
        }
    }

    const CCoeffs c = c_coeffs(s, x);
    cplx den1 = c.c1 + x * c.c2;
    if (std::abs(den1) < 1e-12) {
        throw SingularDenominator("c1 + x c2 vanishes");
    }
    cplx y1 = -(c.c0 + x * c.c1) / den1;
    cplx den2 = std::conj(c.c1) - y1 * std::conj(c.c0);
    if (std::abs(den2) < 1e-12) {
        throw SingularDenominator("c1* - y1 c0* vanishes");
    }
    cplx y = (std::conj(c.c2) - y1 * std::conj(c.c1)) / den2;
    cplx den3 = c.c1 + y * c.c2;
    if (std::abs(den3) < 1e-12) {
        throw SingularDenominator("c1 + y c2 vanishes");
    }
    cplx x1 = -(c.c0 + y * c.c1) / den3;

    const int n = s.n();
    std::vector<PartySettings> parties;
    parties.push_back({Ray::from_param(x1), Ray::from_param(y1)});
    for (int k = 1; k < n; k++) {
        parties.push_back({Ray::from_param(x), Ray::from_param(y)});
    }

    cplx amp = c.c0 + x * c.c1 + x1 * c.c1 + x1 * x * c.c2;
    double norms = (1 + std::norm(x1)) * std::pow(1 + std::norm(x), n - 1);
    double p = std::norm(amp) / norms;

    return SymmetricSolution{x, y1, y, x1, MeasurementSettings(std::move(parties)), p, std::move(excluded)};
}

double ghz_closed_form(int n, double theta, cplx x) {
    if (n < 3 || !(theta > 0 && theta < kPi / 2) || std::abs(x) == 0) {
        throw InvalidArgument("GHZ closed form needs n >= 3, 0 < theta < pi/2 and x != 0");
    }
    const double ax = std::abs(x);
    const double tan_t = std::tan(theta);
    cplx x1_inv = -std::pow(tan_t, 3) * std::pow(ax, 2 * n - 4) * std::pow(x, n - 1);
    cplx x1 = 1.0 / x1_inv;
    double cot2 = 1 / (tan_t * tan_t);
    double bracket = 1 - cot2 / std::pow(ax, 2 * n - 4);
    double c2 = std::cos(theta) * std::cos(theta);
    return c2 * bracket * bracket / ((1 + std::norm(x1)) * std::pow(1 + ax * ax, n - 1));
}

double w_closed_form(int n, cplx x) {
    if (n < 3) {
        throw InvalidArgument("W closed form needs n >= 3");
    }
    cplx y = x * static_cast<double>(n - 1) / (1 + (n - 1) * (n - 2) * std::norm(x));
    cplx x1 = -x * static_cast<double>(n - 2) - y;
    return std::norm(x - y) / (n * (1 + std::norm(x1)) * std::pow(1 + std::norm(x), n - 1));
}

SymmetricSolution solve_auto(const SymmetricState &s) {
    check_symmetric_n(s);
    PureState psi = dicke_expand(s);
    if (!genuine_entanglement_check(psi, 1e-8)) {
        throw NotEntangled("symmetric state is a product state");
    }
    MagicBasis magic = to_magic_basis(s);
    const double w = phase_pick(magic.state);

    std::vector<double> excluded_moduli = f_poly_roots(magic.state, w);
    for (cplx r : degenerate_x_roots(magic.state)) {
        excluded_moduli.push_back(std::abs(r));
    }

    std::vector<double> scan;
    for (int j = 0; j <= 9; j++) {
        scan.push_back(1 + 0.1 * j);
        if (j > 0) {
            scan.push_back(1 - 0.1 * j);
        }
    }
    for (int j = 1; j <= 10; j++) {
        scan.push_back(1.9 + 0.1 * j);
    }

    const Mat2 back = magic.rotation.adjoint();
    for (double m : scan) {
        bool near = std::any_of(excluded_moduli.begin(), excluded_moduli.end(), [m](double t) {
            return std::abs(m - t) < 0.05;
        });
        if (near) {
            continue;
        }
        SymmetricSolution sol = [&]() -> SymmetricSolution {
            try {
                return solve_settings(magic.state, std::polar(m, w));
            } catch (const DegenerateX &) {
            } catch (const SingularDenominator &) {
            }
            return SymmetricSolution{0, 0, 0, 0, MeasurementSettings::uniform(s.n(), Ray(1, 0), Ray(0, 1)), -1, {}};
        }();
        if (sol.p_success <= 0) {
            continue;
        }
        MeasurementSettings original = sol.settings.transformed(back);
        HardyReport report = hardy_conditions(born_distribution(psi, original), 0, {1e-9, 1e-10});
        if (!report.passed) {
            continue;
        }
        sol.settings = std::move(original);
        sol.p_success = report.p_success;
        sol.frame = magic.rotation;
        return sol;
    }
    throw NumericalFailure("no |x| in the scan produced passing settings");
}

}  // namespace nonloc
