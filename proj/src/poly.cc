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

#include "nonloc/poly.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace nonloc {

using cplx = std::complex<double>;

cplx Poly::operator()(cplx x) const {
    cplx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Poly Poly::operator+(const Poly &o) const {
    std::vector<cplx> out(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); i++) {
        out[i] += c_[i];
    }
    for (std::size_t i = 0; i < o.c_.size(); i++) {
        out[i] += o.c_[i];
    }
    return Poly(std::move(out));
}

Poly Poly::operator-(const Poly &o) const {
    return *this + o * cplx(-1.0);
}

Poly Poly::operator*(const Poly &o) const {
    if (c_.empty() || o.c_.empty()) {
        return Poly();
    }
    std::vector<cplx> out(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); i++) {
        for (std::size_t j = 0; j < o.c_.size(); j++) {
            out[i + j] += c_[i] * o.c_[j];
        }
    }
    return Poly(std::move(out));
}

Poly Poly::operator*(cplx s) const {
    std::vector<cplx> out(c_);
    for (auto &c : out) {
        c *= s;
    }
    return Poly(std::move(out));
}

Poly Poly::shifted(int k) const {
    std::vector<cplx> out(static_cast<std::size_t>(k), 0.0);
    out.insert(out.end(), c_.begin(), c_.end());
    return Poly(std::move(out));
}

Poly Poly::conj() const {
    std::vector<cplx> out(c_);
    for (auto &c : out) {
        c = std::conj(c);
    }
    return Poly(std::move(out));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) {
        return Poly();
    }
    std::vector<cplx> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); i++) {
        out[i - 1] = c_[i] * static_cast<double>(i);
    }
    return Poly(std::move(out));
}

int Poly::degree(double trim) const {
    double scale = 1.0;
    for (const auto &c : c_) {
        scale = std::max(scale, std::abs(c));
    }
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; i--) {
        if (std::abs(c_[static_cast<std::size_t>(i)]) > trim * scale) {
            return i;
        }
    }
    return -1;
}

std::vector<cplx> polynomial_roots(const Poly &p, double trim) {
    int deg = p.degree(trim);
    if (deg <= 0) {
        return {};
    }
    auto c = p.coeffs();
    const cplx lead = c[static_cast<std::size_t>(deg)];
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; i++) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < deg; i++) {
        companion(i, deg - 1) = -c[static_cast<std::size_t>(i)] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);

    std::vector<cplx> trimmed(c.begin(), c.begin() + deg + 1);
    Poly q(std::move(trimmed));
    Poly dq = q.derivative();
    for (auto &z : roots) {
        for (int it = 0; it < 3; it++) {
            cplx d = dq(z);
            if (std::abs(d) == 0) {
                break;
            }
            cplx step = q(z) / d;
            // Newton is only trusted when it stays local; clustered roots keep
            // the eigenvalue estimate.
            if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-3 * (1 + std::abs(z))) {
                break;
            }
            cplx next = z - step;
            if (std::abs(q(next)) >= std::abs(q(z))) {
                break;
            }
            z = next;
        }
    }
    return roots;
}

}  // namespace nonloc
