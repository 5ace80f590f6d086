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

#include "nonloc/polytope.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nonloc/error.h"
#include "nonloc/simplex.h"

namespace nonloc {

namespace {

// Bits of the scope-local index for the given global (n-party) index.
std::size_t restrict_index(int n, std::size_t global, const std::vector<int> &scope) {
    std::size_t local = 0;
    for (int p : scope) {
        local = (local << 1) | ((global & party_bit(n, p)) ? 1 : 0);
    }
    return local;
}

JointDistribution two_party_table(const auto &prob) {
    std::vector<double> table(16);
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            for (int a = 0; a < 2; a++) {
                for (int b = 0; b < 2; b++) {
                    table[static_cast<std::size_t>((2 * x + y) * 4 + 2 * a + b)] = prob(a, b, x, y);
                }
            }
        }
    }
    return JointDistribution(2, std::move(table));
}

}  // namespace

std::vector<BoxVertex> deterministic_party_boxes(int party) {
    std::vector<BoxVertex> out;
    for (int oa = 0; oa < 2; oa++) {
        for (int ob = 0; ob < 2; ob++) {
            std::vector<double> table(4, 0.0);
            table[static_cast<std::size_t>(oa)] = 1;      // s = 0 row
            table[static_cast<std::size_t>(2 + ob)] = 1;  // s = 1 row
            out.push_back({{party}, JointDistribution(1, std::move(table)), BoxVertex::Kind::Deterministic});
        }
    }
    return out;
}

std::vector<BoxVertex> ns_bipartite_vertices(int first, int second) {
    std::vector<BoxVertex> out;
    for (int code = 0; code < 16; code++) {
        int a0 = code >> 3 & 1, a1 = code >> 2 & 1, b0 = code >> 1 & 1, b1 = code & 1;
        auto prob = [&](int a, int b, int x, int y) {
            return ((x ? a1 : a0) == a && (y ? b1 : b0) == b) ? 1.0 : 0.0;
        };
        out.push_back({{first, second}, two_party_table(prob), BoxVertex::Kind::Deterministic});
    }
    for (int code = 0; code < 8; code++) {
        int alpha = code >> 2 & 1, beta = code >> 1 & 1, gamma = code & 1;
        auto prob = [&](int a, int b, int x, int y) {
            return (a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma) ? 0.5 : 0.0;
        };
        out.push_back({{first, second}, two_party_table(prob), BoxVertex::Kind::PrBox});
    }
    return out;
}

JointDistribution product_of_boxes(int n, const std::vector<const BoxVertex *> &boxes) {
    std::uint32_t covered = 0;
    for (const auto *box : boxes) {
        for (int p : box->scope) {
            if (covered & (1u << p)) {
                throw InvalidArgument("box scopes overlap");
            }
            covered |= 1u << p;
        }
    }
    if (covered != (1u << n) - 1) {
        throw InvalidArgument("box scopes do not cover every party");
    }
    const std::size_t d = dim_of(n);
    std::vector<double> table(d * d);
    for (std::size_t s = 0; s < d; s++) {
        for (std::size_t r = 0; r < d; r++) {
            double v = 1;
            for (const auto *box : boxes) {
                v *= box->table.at(restrict_index(n, s, box->scope), restrict_index(n, r, box->scope));
            }
            table[s * d + r] = v;
        }
    }
    return JointDistribution(n, std::move(table));
}

double chsh_value(const JointDistribution &d) {
    if (d.n() != 2) {
        throw DimensionMismatch("CHSH needs a two-party table");
    }
    double total = 0;
    for (std::size_t x = 0; x < 2; x++) {
        for (std::size_t y = 0; y < 2; y++) {
            double corr = 0;
            for (std::size_t a = 0; a < 2; a++) {
                for (std::size_t b = 0; b < 2; b++) {
                    corr += ((a ^ b) ? -1.0 : 1.0) * d.at(2 * x + y, 2 * a + b);
                }
            }
            total += ((x & y) ? -1.0 : 1.0) * corr;
        }
    }
    return total;
}

ModelVertexSet deterministic_local_vertices(int n) {
    if (n < 2 || n > 4) {
        throw InvalidArgument("fully-local vertex sets are built for 2 <= n <= 4");
    }
    std::vector<std::vector<BoxVertex>> per_party;
    for (int p = 0; p < n; p++) {
        per_party.push_back(deterministic_party_boxes(p));
    }
    ModelVertexSet vs{"fully-local(" + std::to_string(n) + ")", n, {}, {}};
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; code++) {
        std::vector<const BoxVertex *> boxes;
        for (int p = 0; p < n; p++) {
            boxes.push_back(&per_party[static_cast<std::size_t>(p)][(code >> (2 * (n - 1 - p))) & 3]);
        }
        vs.columns.push_back(product_of_boxes(n, boxes));
        vs.cuts.emplace_back(std::nullopt);
    }
    return vs;
}

ModelVertexSet ns_bipartite_vertex_set() {
    ModelVertexSet vs{"ns-bipartite", 2, {}, {}};
    for (auto &box : ns_bipartite_vertices()) {
        vs.columns.push_back(box.table);
        vs.cuts.emplace_back(std::nullopt);
    }
    return vs;
}

ModelVertexSet bilocal_ns_vertices() {
    constexpr int n = 3;
    ModelVertexSet vs{"bilocal-ns(3)", n, {}, {}};
    for (int single = 0; single < n; single++) {
        int i = single == 0 ? 1 : 0;
        int j = single == 2 ? 1 : 2;
        auto local = deterministic_party_boxes(single);
        auto pair = ns_bipartite_vertices(i, j);
        for (const auto &l : local) {
            for (const auto &q : pair) {
                vs.columns.push_back(product_of_boxes(n, {&l, &q}));
                vs.cuts.emplace_back(Bipartition(n, 1u << single));
            }
        }
    }
    return vs;
}

double evaluate_functional(std::span<const double> functional, const JointDistribution &d) {
    auto raw = d.raw();
    if (functional.size() != raw.size()) {
        throw DimensionMismatch("functional length differs from table size");
    }
    double v = 0;
    for (std::size_t i = 0; i < raw.size(); i++) {
        v += functional[i] * raw[i];
    }
    return v;
}

LPOutcome lp_membership(const JointDistribution &d, const ModelVertexSet &vs) {
    if (d.n() != vs.n) {
        throw DimensionMismatch("distribution and vertex set disagree on party count");
    }
    if (ns_residual(d) > 1e-8) {
        throw SignalingDistribution("membership requires a non-signaling table");
    }
    const auto entries = static_cast<Eigen::Index>(d.raw().size());
    const auto cols = static_cast<Eigen::Index>(vs.columns.size());

    // Rows: every table entry, then sum of weights = 1.
    Eigen::MatrixXd a(entries + 1, cols);
    for (Eigen::Index j = 0; j < cols; j++) {
        auto raw = vs.columns[static_cast<std::size_t>(j)].raw();
        for (Eigen::Index i = 0; i < entries; i++) {
            a(i, j) = raw[static_cast<std::size_t>(i)];
        }
        a(entries, j) = 1;
    }
    Eigen::VectorXd b(entries + 1);
    for (Eigen::Index i = 0; i < entries; i++) {
        b(i) = d.raw()[static_cast<std::size_t>(i)];
    }
    b(entries) = 1;

    PhaseOneResult lp = phase_one(a, b, 1e-9);
    LPOutcome out;

    if (lp.infeasibility <= 1e-9) {
        std::vector<double> w(static_cast<std::size_t>(cols));
        double total = 0;
        for (Eigen::Index j = 0; j < cols; j++) {
            w[static_cast<std::size_t>(j)] = std::max(0.0, lp.x(j));
            total += w[static_cast<std::size_t>(j)];
        }
        for (auto &v : w) {
            v /= total;
        }
        std::vector<double> rebuilt(static_cast<std::size_t>(entries), 0.0);
        for (Eigen::Index j = 0; j < cols; j++) {
            if (w[static_cast<std::size_t>(j)] == 0) {
                continue;
            }
            auto raw = vs.columns[static_cast<std::size_t>(j)].raw();
            for (Eigen::Index i = 0; i < entries; i++) {
                rebuilt[static_cast<std::size_t>(i)] += w[static_cast<std::size_t>(j)] * raw[static_cast<std::size_t>(i)];
            }
        }
        double err = 0;
        for (Eigen::Index i = 0; i < entries; i++) {
            err = std::max(err, std::abs(rebuilt[static_cast<std::size_t>(i)] - b(i)));
        }
        if (err <= 1e-9) {
            out.feasible = true;
            out.weights = std::move(w);
            out.reconstruction_error = err;
            return out;
        }
    }

    // Farkas functional. Every table has rows summing to one, so the weight
    // normalization row folds into a constant per entry.
    const double rows = static_cast<double>(d.dim());
    std::vector<double> cert(static_cast<std::size_t>(entries));
    for (Eigen::Index i = 0; i < entries; i++) {
        cert[static_cast<std::size_t>(i)] = lp.dual(i) + lp.dual(entries) / rows;
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto &col : vs.columns) {
        worst = std::max(worst, evaluate_functional(cert, col));
    }
    // Shift by a multiple of the all-ones functional (value `rows` on every
    // table) so that no column is positive.
    if (worst > 0) {
        for (auto &c : cert) {
            c -= worst / rows;
        }
    }
    double scale = 0;
    for (double c : cert) {
        scale = std::max(scale, std::abs(c));
    }
    if (!(scale > 0)) {
        throw NumericalFailure("degenerate Farkas functional");
    }
    for (auto &c : cert) {
        c /= scale;
    }
    double max_col = -std::numeric_limits<double>::infinity();
    for (const auto &col : vs.columns) {
        max_col = std::max(max_col, evaluate_functional(cert, col));
    }
    double margin = evaluate_functional(cert, d);
    if (max_col > 1e-12 || !(margin > 0)) {
        throw NumericalFailure("neither weights nor a separating functional could be validated");
    }
    out.feasible = false;
    out.certificate = std::move(cert);
    out.margin = margin;
    out.max_column_value = max_col;
    return out;
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Local:
            return "local";
        case Classification::NonlocalButBilocal:
            return "nonlocal-but-bilocal";
        case Classification::GenuinelyNonlocal:
            return "genuinely-nonlocal";
    }
    return "unknown";
}

ClassifyResult classify(const JointDistribution &d) {
    if (d.n() != 3) {
        throw DimensionMismatch("classification is defined for three parties");
    }
    static const ModelVertexSet local = deterministic_local_vertices(3);
    static const ModelVertexSet bilocal = bilocal_ns_vertices();
    ClassifyResult result{Classification::Local, lp_membership(d, local), std::nullopt};
    if (result.local.feasible) {
        return result;
    }
    result.bilocal = lp_membership(d, bilocal);
    result.label = result.bilocal->feasible ? Classification::NonlocalButBilocal : Classification::GenuinelyNonlocal;
    return result;
}

}  // namespace nonloc
