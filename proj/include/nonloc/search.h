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

#ifndef NONLOC_SEARCH_H
#define NONLOC_SEARCH_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nonloc/measure.h"
#include "nonloc/qstate.h"

namespace nonloc {

struct SearchConfig {
    int multistarts = 32;
    int max_iters = 2000;
    double mu = 0.1;
    double eps_zero = 1e-10;
    double delta_pos = 1e-4;
    std::uint64_t seed = 0;
};

/// Settings from 4n Bloch angles: party k uses (t_a, phi_a, t_b, phi_b) at
/// offset 4k.
MeasurementSettings settings_from_angles(int n, std::span<const double> angles);

/// Complex overlaps of psi with the 2n normalized Hardy vectors for pivot 0:
/// the success amplitude first, then the 2n - 1 constraint amplitudes.
std::vector<cplx> hardy_amplitudes(const PureState &psi, std::span<const double> angles);

struct SearchResult {
    bool found = false;
    std::optional<MeasurementSettings> settings;
    double p_success = 0;
    double max_residual = 0;  // best seen, also when nothing was accepted
    int iterations = 0;       // Nelder-Mead iterations plus polish steps
    int starts = 0;
};

/// Multistart penalty minimization of sum |<v_j|psi>|^2 - mu |<a_I|psi>|^2
/// followed by a Gauss-Newton polish of the constraint amplitudes. A start is
/// accepted only if a fresh Born table passes the test at (eps_zero,
/// delta_pos) with pivot 0.
SearchResult find_settings(const PureState &psi, const SearchConfig &cfg);

struct ExperimentRecord {
    int index = 0;
    std::uint64_t sub_seed = 0;  // seed of the accepted Haar draw
    bool passed = false;
    double p_success = 0;
    double max_residual = 0;
    int iterations = 0;
    bool lp_checked = false;
    bool lp_infeasible = false;
    double lp_margin = 0;
};

struct ExperimentSummary {
    int n = 0;
    int count = 0;
    int passed = 0;
    int failed = 0;
    std::vector<ExperimentRecord> records;
};

/// Haar states filtered by genuine entanglement (eps 1e-4, redrawn otherwise),
/// searched independently. For n = 3 the first `lp_subsample` passes are also
/// run through the bilocal membership problem. Deterministic in (n, count,
/// seed, cfg) regardless of `jobs`.
ExperimentSummary random_experiment(
    int n, int count, std::uint64_t seed, const SearchConfig &cfg, int lp_subsample = 20, int jobs = 1);

}  // namespace nonloc

#endif  // NONLOC_SEARCH_H
