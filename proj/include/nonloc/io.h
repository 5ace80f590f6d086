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


#ifndef NONLOC_IO_H
#define NONLOC_IO_H

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "nonloc/hardy.h"
#include "nonloc/polytope.h"
#include "nonloc/search.h"
#include "nonloc/symmetric.h"

namespace nonloc::io {

using json = nlohmann::json;

/// Reads and parses a JSON file. Throws ParseError on I/O or syntax errors.
json read_json_file(const std::string &path);

/// Complex numbers are [re, im] pairs; a bare number is accepted as real.
cplx complex_from_json(const json &j);
json complex_to_json(cplx z);

/// "re,im" or "re".
cplx parse_complex_flag(const std::string &text);

/// {"n", "amplitudes": [[re, im], ...]}, or a symmetric {"n", "h"} record
/// which is expanded onto the computational basis.
PureState state_from_json(const json &j);
json state_to_json(const PureState &psi);

SymmetricState symmetric_from_json(const json &j);
json symmetric_to_json(const SymmetricState &s);

/// {"n", "settings": [{"a": [c0, c1], "b": [c0, c1]}, ...]}.
MeasurementSettings settings_from_json(const json &j);
json settings_to_json(const MeasurementSettings &m);

/// {"n", "p": [[row s = 0], [row s = 1], ...]}.
JointDistribution distribution_from_json(const json &j);
json distribution_to_json(const JointDistribution &d);
/// Columns s, r, p with s and r as n-character bit strings.
void write_distribution_csv(std::ostream &out, const JointDistribution &d);

/// Pivot is written 1-based.
json report_to_json(const HardyReport &r, double ineq1, double ineq2);
json solution_to_json(const SymmetricSolution &s);
/// Bipartition tags are written as 1-based party lists of the singled-out side.
json vertex_set_to_json(const ModelVertexSet &vs);
json lp_outcome_to_json(const LPOutcome &lp);

void write_experiment_csv(std::ostream &out, const ExperimentSummary &summary);
json experiment_summary_to_json(const ExperimentSummary &summary);

/// Bits of an index as a string, party 0 first.
std::string bit_string(int n, std::size_t index);

}  // namespace nonloc::io

#endif  // NONLOC_IO_H
