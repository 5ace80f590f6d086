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

#ifndef NONLOC_POLYTOPE_H
#define NONLOC_POLYTOPE_H

#include <optional>
#include <string>
#include <vector>

#include "nonloc/measure.h"
#include "nonloc/qstate.h"

namespace nonloc {

/// An extreme non-signaling box on a subset of the parties. The table is a
/// JointDistribution over the scope, the first scope party being the most
/// significant bit.
struct BoxVertex {
    enum class Kind { Deterministic, PrBox };
    std::vector<int> scope;
    JointDistribution table;
    Kind kind;
};

/// The four deterministic single-party boxes (outcome for a, outcome for b).
std::vector<BoxVertex> deterministic_party_boxes(int party);

/// 16 deterministic two-party boxes followed by the 8 PR boxes
/// P(ab|xy) = 1/2 iff a ^ b = xy ^ alpha x ^ beta y ^ gamma.
std::vector<BoxVertex> ns_bipartite_vertices(int first = 0, int second = 1);

/// Joins boxes on disjoint scopes covering all n parties into one table.
JointDistribution product_of_boxes(int n, const std::vector<const BoxVertex *> &boxes);

/// CHSH value sum_{xy} (-1)^{xy} E(x, y) of a two-party table.
double chsh_value(const JointDistribution &d);

struct ModelVertexSet {
    std::string model;
    int n = 0;
    std::vector<JointDistribution> columns;
    /// One tag per column; empty for the fully-local and two-party NS sets.
    std::vector<std::optional<Bipartition>> cuts;
};

/// 4^n products of deterministic single-party boxes.
ModelVertexSet deterministic_local_vertices(int n);

/// The 24 two-party NS vertices as a two-party vertex set.
ModelVertexSet ns_bipartite_vertex_set();

/// Tripartite products {k} | {i, j}: 3 cuts x 4 local boxes x 24 NS boxes.
ModelVertexSet bilocal_ns_vertices();

struct LPOutcome {
    bool feasible = false;
    std::vector<double> weights;      // per column, when feasible
    std::vector<double> certificate;  // functional on table entries (s-major), when infeasible
    double margin = 0;                // certificate value on the tested table
    double reconstruction_error = 0;  // when feasible
    double max_column_value = 0;      // certificate maximum over the columns
};

/// Value of a certificate functional on a table.
double evaluate_functional(std::span<const double> functional, const JointDistribution &d);

/// Convex-hull membership of d among the columns of vs. Weights are checked to
/// reproduce d within 1e-9; certificates are checked to be <= 1e-12 on every
/// column and positive on d. Throws NumericalFailure if neither validates.
LPOutcome lp_membership(const JointDistribution &d, const ModelVertexSet &vs);

enum class Classification { Local, NonlocalButBilocal, GenuinelyNonlocal };

std::string to_string(Classification c);

struct ClassifyResult {
    Classification label;
    LPOutcome local;
    std::optional<LPOutcome> bilocal;  // only computed when not local
};

/// Tripartite taxonomy from two membership problems.
ClassifyResult classify(const JointDistribution &d);

}  // namespace nonloc

#endif  // NONLOC_POLYTOPE_H
