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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers as arguments to run
// a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "nonloc/error.h"
#include "nonloc/hardy.h"
#include "nonloc/optimize.h"
#include "nonloc/polytope.h"
#include "nonloc/search.h"
#include "nonloc/symmetric.h"
#include "test_util.h"

using namespace nonloc;
using namespace nonloc::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string &why) {
        if (!cond) {
            if (ok) {
                detail << "first failure: " << why << "; ";
            }
            ok = false;
        }
    }
};

struct Criterion {
    int id;
    const char *name;
    double budget_s;
    std::function<void(Outcome &)> body;
};

std::vector<Eigen::Vector2cd> solver_rays(const SymmetricSolution &sol, int n) {
    return param_rays(n, sol.x1, sol.x);
}

void ghz_closed_form_grid(Outcome &out) {
    double worst = 0, worst_zero = 0;
    for (int n = 3; n <= 6; n++) {
        for (double th : {kPi / 8, kPi / 6, kPi / 4, kPi / 3}) {
            auto g = SymmetricState::ghz(n, th);
            PureState psi = dicke_expand(g);
            for (cplx x : {cplx(0, 2), std::polar(0.5, kPi / 3)}) {
                try {
                    auto sol = solve_settings(g, x);
                    double oracle = tensor_success(psi, solver_rays(sol, n));
                    worst = std::max(worst, std::abs(ghz_closed_form(n, th, x) - oracle));
                } catch (const Error &e) {
                    out.require(false, std::string("solver rejected a grid point: ") + e.what());
                }
                double r0 = std::pow(1 / std::tan(th), 1.0 / (n - 2));
                worst_zero = std::max(worst_zero, std::abs(ghz_closed_form(n, th, std::polar(r0, std::arg(x)))));
            }
        }
    }
    out.detail << "max |closed - tensor| = " << worst << ", max |p| at zero modulus = " << worst_zero;
    out.require(worst <= 1e-10, "closed form disagrees with tensor value");
    out.require(worst_zero <= 1e-12, "closed form not zero at the excluded modulus");
}

void w_closed_form_grid(Outcome &out) {
    double worst = 0, worst_zero = 0;
    for (int n = 3; n <= 5; n++) {
        auto w = SymmetricState::w(n);
        PureState psi = dicke_expand(w);
        for (cplx x : {cplx(1, 0), cplx(0, 0.3), cplx(2, -1)}) {
            try {
                auto sol = solve_settings(w, x);
                double oracle = tensor_success(psi, solver_rays(sol, n));
                worst = std::max(worst, std::abs(w_closed_form(n, x) - oracle));
            } catch (const Error &e) {
                out.require(false, std::string("solver rejected a grid point: ") + e.what());
            }
            worst_zero = std::max(worst_zero, std::abs(w_closed_form(n, std::polar(std::sqrt(1.0 / (n - 1)), std::arg(x)))));
        }
    }
    out.detail << "max |closed - tensor| = " << worst << ", max |p| at zero modulus = " << worst_zero;
    out.require(worst <= 1e-10, "closed form disagrees with tensor value");
    out.require(worst_zero <= 1e-12, "closed form not zero at the excluded modulus");
}

void fixture_values(Outcome &out) {
    struct Case {
        SymmetricState s;
        cplx x, y1, y, x1;
        double p;
    };
    std::vector<Case> cases = {
        {SymmetricState::ghz(3, kPi / 4), cplx(0, 2), 0.25, cplx(0, 8), 1.0 / 16, 72.0 / 6425},
        {SymmetricState::w(3), 1.0, -2.0, 2.0 / 3, -5.0 / 3, 1.0 / 408},
    };
    double solver_err = 0, tensor_err = 0, residual = 0;
    for (const auto &c : cases) {
        auto sol = solve_settings(c.s, c.x);
        solver_err = std::max({solver_err, std::abs(sol.y1 - c.y1), std::abs(sol.y - c.y), std::abs(sol.x1 - c.x1),
                               std::abs(sol.p_success - c.p)});
        // The oracle uses the expected parameters, not the solver's.
        PureState psi = dicke_expand(c.s);
        tensor_err = std::max(tensor_err, std::abs(tensor_success(psi, param_rays(3, c.x1, c.x)) - c.p));
        std::vector<PartySettings> ps = {{Ray::from_param(c.x1), Ray::from_param(c.y1)}};
        for (int k = 1; k < 3; k++) {
            ps.push_back({Ray::from_param(c.x), Ray::from_param(c.y)});
        }
        auto r = hardy_conditions(born_distribution(psi, MeasurementSettings(ps)), 0, {1e-10, 1e-6});
        for (double z : r.zero_residuals) {
            residual = std::max(residual, z);
        }
        tensor_err = std::max(tensor_err, std::abs(r.p_success - c.p));
    }
    out.detail << "solver error = " << solver_err << ", tensor error = " << tensor_err
               << ", max zero residual = " << residual;
    out.require(solver_err <= 1e-12, "solver values differ from the fixtures");
    out.require(tensor_err <= 1e-10, "tensor oracle differs from the fixtures");
    out.require(residual <= 1e-10, "zero conditions not met on the tensor table");
}

void symmetric_random(Outcome &out) {
    int passed = 0, total = 0;
    double worst_res = 0, min_p = 1;
    for (int n = 3; n <= 5; n++) {
        for (int i = 0; i < 200; i++) {
            total++;
            std::uint64_t seed = derive_seed(2024 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
            auto s = haar_random_symmetric(n, seed);
            try {
                auto sol = solve_auto(s);
                auto r = hardy_conditions(born_distribution(dicke_expand(s), sol.settings), 0, {1e-8, 1e-10});
                double res = *std::max_element(r.zero_residuals.begin(), r.zero_residuals.end());
                worst_res = std::max(worst_res, res);
                min_p = std::min(min_p, r.p_success);
                if (r.passed) {
                    passed++;
                } else {
                    out.require(false, "n=" + std::to_string(n) + " seed=" + std::to_string(seed) + " failed");
                }
            } catch (const Error &e) {
                out.require(false, "n=" + std::to_string(n) + " seed=" + std::to_string(seed) + ": " + e.what());
            }
        }
    }
    out.detail << passed << "/" << total << " pass, max residual = " << worst_res << ", min p_success = " << min_p;
}

void bilocal_vertex_inequalities(Outcome &out) {
    auto vs = bilocal_ns_vertices();
    double w1 = -1e9, w2 = -1e9;
    for (const auto &c : vs.columns) {
        for (int p = 0; p < 3; p++) {
            w1 = std::max(w1, inequality1(c, p));
        }
        w2 = std::max(w2, inequality2(c));
    }
    out.detail << vs.columns.size() << " vertices, max ineq1 = " << w1 << ", max ineq2 = " << w2;
    out.require(vs.columns.size() == 288, "vertex count");
    out.require(w1 <= 1e-12 && w2 <= 1e-12, "an inequality is violated by a vertex");
}

void lp_cross_validation(Outcome &out) {
    auto vs = bilocal_ns_vertices();
    for (auto [name, s, x] : {std::tuple{"GHZ", SymmetricState::ghz(3, kPi / 4), cplx(0, 2)},
                              std::tuple{"W", SymmetricState::w(3), cplx(1, 0)}}) {
        auto d = born_distribution(dicke_expand(s), solve_settings(s, x).settings);
        auto lp = lp_membership(d, vs);
        double worst_col = -1e9;
        for (const auto &c : vs.columns) {
            worst_col = std::max(worst_col, evaluate_functional(lp.certificate, c));
        }
        out.detail << name << " margin = " << lp.margin << " (max column " << worst_col << "), ";
        out.require(!lp.feasible, std::string(name) + " table was feasible");
        out.require(lp.margin > 1e-6 && worst_col <= 1e-12, std::string(name) + " certificate did not validate");
    }
    std::mt19937_64 rng(31337);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, vs.columns.size() - 1);
    double worst_err = 0;
    int feasible = 0;
    for (int i = 0; i < 1000; i++) {
        std::vector<double> t(64, 0.0), w(20);
        double total = 0;
        for (auto &v : w) {
            total += v = gamma(rng);
        }
        for (double v : w) {
            auto raw = vs.columns[pick(rng)].raw();
            for (std::size_t j = 0; j < 64; j++) {
                t[j] += v / total * raw[j];
            }
        }
        auto lp = lp_membership(JointDistribution(3, t), vs);
        if (lp.feasible) {
            feasible++;
            worst_err = std::max(worst_err, lp.reconstruction_error);
        }
    }
    out.detail << feasible << "/1000 mixtures feasible, max reconstruction error = " << worst_err;
    out.require(feasible == 1000 && worst_err <= 1e-9, "a mixture was not recovered");
}

void hardy_two_qubits(Outcome &out) {
    const double target = 0.0901699;
    auto objective = [](std::span<const double> a) {
        try {
            auto sub = construct_hardy_state(settings_from_angles(2, a));
            return -std::norm(sub.basis.col(0).dot(sub.phi.vector()));
        } catch (const Error &) {
            return 0.0;
        }
    };
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> t(0, kPi), phi(0, 2 * kPi);
    double best = 0;
    for (int start = 0; start < 20; start++) {
        std::vector<double> x0;
        for (int k = 0; k < 4; k++) {
            x0.push_back(t(rng));
            x0.push_back(phi(rng));
        }
        auto r = nelder_mead(objective, x0, 0.4, 4000, 1e-10);
        best = std::max(best, -r.value);
    }
    out.detail << "max p_success = " << best << " (target " << target << ")";
    out.require(std::abs(best - target) <= 1e-3, "optimum differs from the two-qubit Hardy maximum");
}

void random_state_experiment(Outcome &out) {
    SearchConfig cfg;
    for (auto [n, count] : {std::pair{3, 500}, std::pair{4, 100}}) {
        auto s = random_experiment(n, count, 7, cfg, n == 3 ? 20 : 0, 1);
        out.detail << "n=" << n << ": " << s.passed << "/" << count << " pass";
        for (const auto &r : s.records) {
            if (!r.passed) {
                out.detail << " [fail index " << r.index << " sub_seed " << r.sub_seed << "]";
            }
        }
        out.require(s.passed == count, "a random state failed the search");
        if (n == 3) {
            int checked = 0, infeasible = 0;
            double min_margin = 1e9;
            for (const auto &r : s.records) {
                if (r.lp_checked) {
                    checked++;
                    infeasible += r.lp_infeasible ? 1 : 0;
                    min_margin = std::min(min_margin, r.lp_margin);
                }
            }
            out.detail << ", LP " << infeasible << "/" << checked << " infeasible (min margin " << min_margin << "); ";
            out.require(checked == 20 && infeasible == 20, "LP subsample not all infeasible");
        }
    }
}

void property_suites(Outcome &out) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> t(0, kPi), phi(0, 2 * kPi);
    auto random_settings = [&](int n) {
        std::vector<double> a;
        for (int k = 0; k < 4 * n; k++) {
            a.push_back(k % 2 ? phi(rng) : t(rng));
        }
        return settings_from_angles(n, a);
    };
    double ns = 0;
    for (int i = 0; i < 500; i++) {
        int n = 2 + i % 4;
        ns = std::max(ns, ns_residual(born_distribution(haar_random_pure(n, 10000 + i), random_settings(n))));
    }
    double hardy = 0;
    for (int n = 2; n <= 4; n++) {
        for (int i = 0; i < 100; i++) {
            auto m = random_settings(n);
            auto sub = construct_hardy_state(m);
            auto r = hardy_conditions(born_distribution(sub.phi, m), 0, {1e-10, 1e-14});
            for (double z : r.zero_residuals) {
                hardy = std::max(hardy, z);
            }
        }
    }
    double magic = 0;
    for (int i = 0; i < 100; i++) {
        auto mb = to_magic_basis(haar_random_symmetric(3 + i % 4, 20000 + i));
        magic = std::max(magic, std::abs(mb.state.h(1)));
    }
    out.detail << "max ns residual = " << ns << ", max Hardy-state residual = " << hardy
               << ", max magic |h1| = " << magic;
    out.require(ns <= 1e-10, "a quantum table signals");
    out.require(hardy < 1e-10, "constructed Hardy state misses a zero");
    out.require(magic <= 1e-8, "magic basis leaves h1 nonzero");
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<Criterion> all = {
        {1, "ghz-closed-form", 10, ghz_closed_form_grid},
        {2, "w-closed-form", 10, w_closed_form_grid},
        {3, "fixture-values", 10, fixture_values},
        {4, "symmetric-solver-random-states", 120, symmetric_random},
        {5, "bilocal-vertex-inequalities", 5, bilocal_vertex_inequalities},
        {6, "bilocal-lp-cross-validation", 60, lp_cross_validation},
        {7, "two-qubit-hardy-optimum", 60, hardy_two_qubits},
        {8, "random-state-experiment", 900, random_state_experiment},
        {9, "property-suites", 120, property_suites},
    };
    std::set<int> only;
    for (int i = 1; i < argc; i++) {
        only.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const auto &c : all) {
        if (!only.empty() && !only.count(c.id)) {
            continue;
        }
        Outcome out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception &e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            out.require(false, "runtime over budget");
        }
        failures += out.ok ? 0 : 1;
        std::printf("%s %d %s: %s [%.2fs / %.0fs]\n", out.ok ? "PASS" : "FAIL", c.id, c.name,
                    out.detail.str().c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
