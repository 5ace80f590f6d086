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

#include "nonloc/simplex.h"

#include <limits>

#include "nonloc/error.h"

namespace nonloc {

PhaseOneResult phase_one(const Eigen::MatrixXd &a, const Eigen::VectorXd &b, double tol) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (b.size() != m) {
        throw DimensionMismatch("right-hand side length differs from row count");
    }

    Eigen::VectorXd sign = Eigen::VectorXd::Ones(m);
    for (Eigen::Index i = 0; i < m; i++) {
        if (b(i) < 0) {
            sign(i) = -1;
        }
    }

    // Columns: n structural, m artificial, then the right-hand side.
    // Row m holds the reduced costs of the auxiliary objective sum(artificial).
    const Eigen::Index rhs = n + m;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    t.topLeftCorner(m, n) = sign.asDiagonal() * a;
    t.block(0, n, m, m).setIdentity();
    t.col(rhs).head(m) = sign.cwiseProduct(b);
    t.row(m).head(n) = -t.topLeftCorner(m, n).colwise().sum();
    t(m, rhs) = -t.col(rhs).head(m).sum();

    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; i++) {
        basis[static_cast<std::size_t>(i)] = n + i;
    }

    PhaseOneResult result;
    const int max_pivots = 50000;
    while (true) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n + m; j++) {
            if (t(m, j) < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            break;
        }
        Eigen::Index leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; i++) {
            double piv = t(i, enter);
            if (piv <= tol) {
                continue;
            }
            double ratio = t(i, rhs) / piv;
            if (ratio < best_ratio - 1e-15 ||
                (ratio <= best_ratio + 1e-15 && leave >= 0 &&
                 basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) {
            // The auxiliary objective is bounded below by zero, so an
            // unbounded ray only appears through round-off.
            throw NumericalFailure("phase-one simplex found an unbounded direction");
        }
        t.row(leave) /= t(leave, enter);
        for (Eigen::Index i = 0; i <= m; i++) {
            if (i != leave && t(i, enter) != 0) {
                t.row(i) -= t(i, enter) * t.row(leave);
            }
        }
        basis[static_cast<std::size_t>(leave)] = enter;
        if (++result.pivots > max_pivots) {
            throw NumericalFailure("phase-one simplex exceeded the pivot limit");
        }
    }

    // Recompute the basic solution and multipliers from the original data.
    Eigen::MatrixXd bmat(m, m);
    Eigen::VectorXd cost(m);
    for (Eigen::Index i = 0; i < m; i++) {
        Eigen::Index j = basis[static_cast<std::size_t>(i)];
        if (j < n) {
            bmat.col(i) = sign.asDiagonal() * a.col(j);
            cost(i) = 0;
        } else {
            bmat.col(i) = Eigen::VectorXd::Unit(m, j - n);
            cost(i) = 1;
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
    Eigen::VectorXd xb = lu.solve(sign.cwiseProduct(b));
    Eigen::VectorXd y = lu.transpose().solve(cost);

    result.x = Eigen::VectorXd::Zero(n);
    result.infeasibility = 0;
    for (Eigen::Index i = 0; i < m; i++) {
        Eigen::Index j = basis[static_cast<std::size_t>(i)];
        if (j < n) {
            result.x(j) = xb(i);
        } else {
            result.infeasibility += xb(i);
        }
    }
    result.dual = sign.cwiseProduct(y);
    return result;
}

}  // namespace nonloc
