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

#ifndef NONLOC_OPTIMIZE_H
#define NONLOC_OPTIMIZE_H

#include <functional>
#include <span>
#include <vector>

namespace nonloc {

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;  // simplex shrank below the size tolerance
};

/// Derivative-free minimization (Nelder-Mead simplex, GSL nmsimplex2).
MinimizeResult nelder_mead(
    const Objective &f, std::vector<double> x0, double initial_step, int max_iters, double size_tol);

}  // namespace nonloc

#endif  // NONLOC_OPTIMIZE_H
