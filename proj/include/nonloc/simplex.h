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

#ifndef NONLOC_SIMPLEX_H
#define NONLOC_SIMPLEX_H

#include <vector>

#include <Eigen/Dense>

namespace nonloc {

struct PhaseOneResult {
    /// Sum of artificial variables at the optimum of the auxiliary problem.
    double infeasibility = 0;
    /// A basic nonnegative x with A x ~= b (meaningful when infeasibility ~ 0).
    Eigen::VectorXd x;
    /// Simplex multipliers of the auxiliary problem: y^T A_j <= 0 for every
    /// column and y^T b = infeasibility. A Farkas certificate when positive.
    Eigen::VectorXd dual;
    int pivots = 0;
};

/// Phase-one dense tableau simplex for {A x = b, x >= 0} with Bland's rule
/// (lowest-index entering and leaving variables). Rows with b_i < 0 are
/// negated internally; the dual is reported for the original rows.
PhaseOneResult phase_one(const Eigen::MatrixXd &a, const Eigen::VectorXd &b, double tol = 1e-9);

}  // namespace nonloc

#endif  // NONLOC_SIMPLEX_H
