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


#include "nonloc/io.h"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nonloc/error.h"

namespace nonloc::io {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int party_count(const json &j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw ParseError("record needs an integer field \"n\"");
    }
    return j["n"].get<int>();
}

std::vector<cplx> complex_list(const json &j, const char *field) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw ParseError(std::string("record needs an array field \"") + field + "\"");
    }
    std::vector<cplx> out;
    for (const auto &z : j[field]) {
        out.push_back(complex_from_json(z));
    }
    return out;
}

json ray_to_json(const Ray &r) {
    return json::array({complex_to_json(r.c0()), complex_to_json(r.c1())});
}

Ray ray_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("a ray is a pair of complex components");
    }
    return Ray(complex_from_json(j[0]), complex_from_json(j[1]));
}

json parties_to_json(int n, std::uint32_t mask) {
    json out = json::array();
    for (int p = 0; p < n; p++) {
        if (mask & (1u << p)) {
            out.push_back(p + 1);
        }
    }
    return out;
}

}  // namespace

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
}

cplx complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ParseError("complex values are [re, im] pairs: " + j.dump());
}

json complex_to_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

cplx parse_complex_flag(const std::string &text) {
    std::istringstream in(text);
    double re = 0, im = 0;
    char comma = 0;
    if (!(in >> re)) {
        throw ParseError("cannot read complex value \"" + text + "\"");
    }
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) {
            throw ParseError("complex values are written re,im: \"" + text + "\"");
        }
    }
    in >> std::ws;
    if (!in.eof()) {
        throw ParseError("trailing characters in \"" + text + "\"");
    }
    return {re, im};
}

PureState state_from_json(const json &j) {
    int n = party_count(j);
    if (j.contains("amplitudes")) {
        return PureState(n, complex_list(j, "amplitudes"));
    }
    if (j.contains("h")) {
        return dicke_expand(symmetric_from_json(j));
    }
    throw ParseError("state record needs \"amplitudes\" or \"h\"");
}

json state_to_json(const PureState &psi) {
    json amps = json::array();
    for (cplx a : psi.amplitudes()) {
        amps.push_back(complex_to_json(a));
    }
    return {{"n", psi.n()}, {"amplitudes", amps}};
}

SymmetricState symmetric_from_json(const json &j) {
    return SymmetricState(party_count(j), complex_list(j, "h"));
}

json symmetric_to_json(const SymmetricState &s) {
    json h = json::array();
    for (cplx v : s.h()) {
        h.push_back(complex_to_json(v));
    }
    return {{"n", s.n()}, {"h", h}};
}

MeasurementSettings settings_from_json(const json &j) {
    int n = party_count(j);
    if (!j.contains("settings") || !j["settings"].is_array()) {
        throw ParseError("settings record needs an array \"settings\"");
    }
    std::vector<PartySettings> parties;
    for (const auto &p : j["settings"]) {
        if (!p.is_object() || !p.contains("a") || !p.contains("b")) {
            throw ParseError("each party needs rays \"a\" and \"b\"");
        }
        parties.push_back({ray_from_json(p["a"]), ray_from_json(p["b"])});
    }
    if (static_cast<int>(parties.size()) != n) {
        throw DimensionMismatch("dimension mismatch: settings list " + std::to_string(parties.size()) +
                                " parties but n = " + std::to_string(n));
    }
    return MeasurementSettings(std::move(parties));
}

json settings_to_json(const MeasurementSettings &m) {
    json list = json::array();
    for (const auto &p : m.parties()) {
        list.push_back({{"a", ray_to_json(p.a)}, {"b", ray_to_json(p.b)}});
    }
    return {{"n", m.n()}, {"settings", list}};
}

JointDistribution distribution_from_json(const json &j) {
    int n = party_count(j);
    if (n < 1 || n > kMaxParties) {
        throw ParseError("party count out of range");
    }
    if (!j.contains("p") || !j["p"].is_array()) {
        throw ParseError("distribution record needs an array \"p\"");
    }
    const std::size_t d = dim_of(n);
    const auto &rows = j["p"];
    if (rows.size() != d) {
        throw DimensionMismatch("dimension mismatch: expected " + std::to_string(d) + " rows");
    }
    std::vector<double> table;
    table.reserve(d * d);
    for (const auto &row : rows) {
        if (!row.is_array() || row.size() != d) {
            throw DimensionMismatch("dimension mismatch: expected rows of length " + std::to_string(d));
        }
        for (const auto &v : row) {
            if (!v.is_number()) {
                throw ParseError("probabilities must be numbers");
            }
            table.push_back(v.get<double>());
        }
    }
    return JointDistribution(n, std::move(table));
}

json distribution_to_json(const JointDistribution &d) {
    json rows = json::array();
    auto clamped = d.clamped();
    for (std::size_t s = 0; s < d.dim(); s++) {
        rows.push_back(std::vector<double>(clamped.begin() + static_cast<std::ptrdiff_t>(s * d.dim()),
                                           clamped.begin() + static_cast<std::ptrdiff_t>((s + 1) * d.dim())));
    }
    return {{"n", d.n()}, {"p", rows}};
}

std::string bit_string(int n, std::size_t index) {
    std::string out;
    for (int p = 0; p < n; p++) {
        out.push_back((index & party_bit(n, p)) ? '1' : '0');
    }
    return out;
}

void write_distribution_csv(std::ostream &out, const JointDistribution &d) {
    out << "s,r,p\n";
    auto clamped = d.clamped();
    for (std::size_t s = 0; s < d.dim(); s++) {
        for (std::size_t r = 0; r < d.dim(); r++) {
            out << bit_string(d.n(), s) << ',' << bit_string(d.n(), r) << ',' << num(clamped[s * d.dim() + r])
                << '\n';
        }
    }
}

json report_to_json(const HardyReport &r, double ineq1, double ineq2) {
    return {{"pivot", r.pivot + 1},
            {"p_success", r.p_success},
            {"zero_residuals", r.zero_residuals},
            {"passed", r.passed},
            {"ineq1", ineq1},
            {"ineq2", ineq2}};
}

json solution_to_json(const SymmetricSolution &s) {
    json excluded = json::array();
    for (cplx z : s.excluded_x) {
        excluded.push_back(complex_to_json(z));
    }
    return {{"x", complex_to_json(s.x)},
            {"y1", complex_to_json(s.y1)},
            {"y", complex_to_json(s.y)},
            {"x1", complex_to_json(s.x1)},
            {"p_success", s.p_success},
            {"excluded_x", excluded},
            {"settings", settings_to_json(s.settings)}};
}

json vertex_set_to_json(const ModelVertexSet &vs) {
    json cols = json::array();
    for (std::size_t c = 0; c < vs.columns.size(); c++) {
        json col = distribution_to_json(vs.columns[c]);
        col.erase("n");
        if (c < vs.cuts.size() && vs.cuts[c]) {
            col["bipartition"] = parties_to_json(vs.n, vs.cuts[c]->alpha());
        } else {
            col["bipartition"] = nullptr;
        }
        cols.push_back(std::move(col));
    }
    return {{"model", vs.model}, {"n", vs.n}, {"columns", cols}};
}

json lp_outcome_to_json(const LPOutcome &lp) {
    json out = {{"feasible", lp.feasible}, {"margin", lp.margin}};
    out["weights"] = lp.feasible ? json(lp.weights) : json(nullptr);
    out["certificate"] = lp.feasible ? json(nullptr) : json(lp.certificate);
    if (lp.feasible) {
        out["reconstruction_error"] = lp.reconstruction_error;
    } else {
        out["max_column_value"] = lp.max_column_value;
    }
    return out;
}

void write_experiment_csv(std::ostream &out, const ExperimentSummary &summary) {
    out << "index,sub_seed,passed,p_success,max_residual,iterations,lp_checked,lp_infeasible,lp_margin\n";
    for (const auto &r : summary.records) {
        out << r.index << ',' << r.sub_seed << ',' << (r.passed ? 1 : 0) << ',' << num(r.p_success) << ','
            << num(r.max_residual) << ',' << r.iterations << ',' << (r.lp_checked ? 1 : 0) << ','
            << (r.lp_infeasible ? 1 : 0) << ',' << num(r.lp_margin) << '\n';
    }
}

json experiment_summary_to_json(const ExperimentSummary &summary) {
    json failed = json::array();
    int lp_checked = 0, lp_infeasible = 0;
    for (const auto &r : summary.records) {
        if (!r.passed) {
            failed.push_back({{"index", r.index}, {"sub_seed", r.sub_seed}, {"max_residual", r.max_residual}});
        }
        lp_checked += r.lp_checked ? 1 : 0;
        lp_infeasible += r.lp_infeasible ? 1 : 0;
    }
    return {{"n", summary.n},
            {"count", summary.count},
            {"passed", summary.passed},
            {"failed", summary.failed},
            {"failures", failed},
            {"lp_checked", lp_checked},
            {"lp_infeasible", lp_infeasible}};
}

}  // namespace nonloc::io
