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

#include "nonloc/hardy.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nonloc/error.h"

namespace nonloc {

namespace {

void check_pivot(int n, int pivot) {
    if (pivot < 0 || pivot >= n) {
        throw InvalidArgument("pivot " + std::to_string(pivot) + " outside the party range");
    }
}

double single_b_sum(const JointDistribution &d) {
    double sum = 0;
    for (int k = 0; k < d.n(); k++) {
        auto c = single_b_cell(d.n(), k);
        sum += d.at(c.s, c.r);
    }
    return sum;
}

}  // namespace

TableCell success_cell() {
    return {0, 0};
}

TableCell single_b_cell(int n, int k) {
    return {party_bit(n, k), 0};
}

TableCell pair_b_cell(int n, int pivot, int k) {
    std::size_t both = party_bit(n, pivot) | party_bit(n, k);
    return {both, both};
}

HardyReport hardy_conditions(const JointDistribution &d, int pivot, HardyTolerances tol, HardyVariant variant) {
    const int n = d.n();
    check_pivot(n, pivot);
    HardyReport report;
    report.pivot = pivot;
    report.p_success = d.at(0, 0);
    for (int k = 0; k < n; k++) {
        auto c = single_b_cell(n, k);
        report.zero_residuals.push_back(d.at(c.s, c.r));
    }
    if (variant == HardyVariant::Genuine) {
        for (int k = 0; k < n; k++) {
            if (k == pivot) {
                continue;
            }
            auto c = pair_b_cell(n, pivot, k);
            report.zero_residuals.push_back(d.at(c.s, c.r));
        }
    } else {
        report.zero_residuals.push_back(d.at(d.dim() - 1, d.dim() - 1));
    }
    double worst = *std::max_element(report.zero_residuals.begin(), report.zero_residuals.end());
    report.passed = report.p_success > tol.delta_pos && worst < tol.eps_zero;
    return report;
}

double inequality1(const JointDistribution &d, int pivot) {
    const int n = d.n();
    check_pivot(n, pivot);
    double value = d.at(0, 0) - single_b_sum(d);
    for (int k = 0; k < n; k++) {
        if (k != pivot) {
            auto c = pair_b_cell(n, pivot, k);
            value -= d.at(c.s, c.r);
        }
    }
    return value;
}

double inequality2(const JointDistribution &d) {
    const int n = d.n();
    double pairs = 0;
    for (int kp = 0; kp < n; kp++) {
        for (int k = 0; k < n; k++) {
            if (k != kp) {
                auto c = pair_b_cell(n, kp, k);
                pairs += d.at(c.s, c.r);
            }
        }
    }
    return d.at(0, 0) - single_b_sum(d) - pairs / (n - 1);
}

std::vector<Eigen::VectorXcd> hardy_vectors(const MeasurementSettings &settings) {
    const int n = settings.n();
    std::vector<Eigen::VectorXcd> out;
    out.reserve(static_cast<std::size_t>(2 * n));
    auto c = success_cell();
    out.push_back(product_vector(settings, c.s, c.r));
    for (int k = 0; k < n; k++) {
        c = single_b_cell(n, k);
        out.push_back(product_vector(settings, c.s, c.r));
    }
    for (int k = 1; k < n; k++) {
        c = pair_b_cell(n, 0, k);
        out.push_back(product_vector(settings, c.s, c.r));
    }
    return out;
}

HardySubspace construct_hardy_state(const MeasurementSettings &settings) {
    const int n = settings.n();
    auto vectors = hardy_vectors(settings);
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    const auto cols = static_cast<Eigen::Index>(vectors.size());
    Eigen::MatrixXcd basis(dim, cols);
    for (Eigen::Index j = 0; j < cols; j++) {
        basis.col(j) = vectors[static_cast<std::size_t>(j)];
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> span_svd(basis);
    if (span_svd.singularValues().minCoeff() <= 1e-10) {
        throw DegenerateSettings("the 2n Hardy vectors are linearly dependent");
    }

    // Coefficients c with basis*c orthogonal to every constraint vector.
    Eigen::MatrixXcd overlaps = basis.rightCols(cols - 1).adjoint() * basis;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlaps, Eigen::ComputeFullV);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); i++) {
        if (svd.singularValues()(i) > 1e-10) {
            rank++;
        }
    }
    if (cols - rank != 1) {
        throw NonUniqueSolution("constraint null space has dimension " + std::to_string(cols - rank));
    }
    Eigen::VectorXcd coeffs = svd.matrixV().col(cols - 1);
    Eigen::VectorXcd phi = basis * coeffs;
    phi /= phi.norm();
    cplx success = vectors.front().dot(phi);
    if (std::abs(success) < 1e-10) {
        throw VanishingSuccess("<a_I|phi> vanishes");
    }
    // Fix the global phase so that <a_I|phi> is real and positive.
    phi *= std::conj(success) / std::abs(success);

    PureState state = PureState::from_vector(n, phi);
    HardyReport check = hardy_conditions(born_distribution(state, settings), 0, {1e-9, 0.0});
    if (!check.passed) {
        throw NumericalFailure("constructed state does not satisfy the zero conditions");
    }
    return HardySubspace{settings, std::move(basis), std::move(state)};
}

bool mixed_state_check(const DensityMatrix &rho, const HardySubspace &sub, double tol) {
    if (rho.n() != sub.phi.n()) {
        throw DimensionMismatch("density matrix and subspace disagree on party count");
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sub.basis);
    Eigen::MatrixXcd q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(sub.basis.rows(), sub.basis.cols());
    Eigen::MatrixXcd projected = q.adjoint() * rho.matrix() * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(projected, Eigen::EigenvaluesOnly);
    const auto &ev = eig.eigenvalues();
    if (ev(ev.size() - 2) > tol) {
        return false;
    }
    Eigen::VectorXcd w = q.adjoint() * sub.phi.vector();
    cplx weight = w.dot(projected * w);
    double off = (projected - weight * w * w.adjoint()).norm();
    return off <= tol;
}

}  // namespace nonloc
