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

#ifndef NONLOC_HARDY_H
#define NONLOC_HARDY_H

#include <cstddef>
#include <vector>

#include "nonloc/measure.h"
#include "nonloc/qstate.h"

namespace nonloc {

// The test: with every party measuring a, all outcomes 0 must have positive
// probability, while
//   P(0...0 | b_k a_rest)               = 0  for every party k, and
//   P(1_pivot 1_k 0_rest | b_pivot b_k a_rest) = 0  for every k != pivot.
// Parties are zero-based throughout the C++ API.

struct HardyTolerances {
    double eps_zero = 1e-9;
    double delta_pos = 1e-6;
};

enum class HardyVariant {
    Genuine,   // the n - 1 pivot pair conditions
    Standard,  // a single condition P(1...1 | b...b) = 0 replaces them
};

struct HardyReport {
    int pivot = 0;
    double p_success = 0;
    std::vector<double> zero_residuals;
    bool passed = false;
};

/// Setting/outcome index of the single-party condition for party k.
struct TableCell {
    std::size_t s;
    std::size_t r;
};
TableCell success_cell();
TableCell single_b_cell(int n, int k);
TableCell pair_b_cell(int n, int pivot, int k);

HardyReport hardy_conditions(
    const JointDistribution &d,
    int pivot = 0,
    HardyTolerances tol = {},
    HardyVariant variant = HardyVariant::Genuine);

/// P(0|a) - sum_k P(0|b_k a) - sum_{k != pivot} P(1_pivot 1_k 0|b_pivot b_k a).
double inequality1(const JointDistribution &d, int pivot = 0);

/// Same first two terms, minus 1/(n-1) times the pair term summed over all
/// ordered pairs k != k'.
double inequality2(const JointDistribution &d);

/// The 2n product vectors spanning the Hardy subspace for pivot 0: the
/// success vector a...a first, then b_k a_rest for each k, then the
/// complement pair vectors for k = 1..n-1. All normalized.
std::vector<Eigen::VectorXcd> hardy_vectors(const MeasurementSettings &settings);

struct HardySubspace {
    MeasurementSettings settings;
    Eigen::MatrixXcd basis;  // 2^n x 2n, columns as in hardy_vectors
    PureState phi;
};

/// The unique state of the span orthogonal to the 2n - 1 constraint vectors.
HardySubspace construct_hardy_state(const MeasurementSettings &settings);

/// True iff the projection of rho onto the subspace is proportional to
/// |phi><phi| (second eigenvalue <= tol, leading eigenvector along phi).
bool mixed_state_check(const DensityMatrix &rho, const HardySubspace &sub, double tol);

}  // namespace nonloc

#endif  // NONLOC_HARDY_H
