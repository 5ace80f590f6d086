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

#include "nonloc/search.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "nonloc/error.h"
#include "nonloc/hardy.h"
#include "nonloc/optimize.h"
#include "nonloc/polytope.h"

namespace nonloc {

namespace {

constexpr double kPi = std::numbers::pi;

Qubit bloch(double t, double phi) {
    return Qubit(std::cos(t / 2), std::polar(1.0, phi) * std::sin(t / 2));
}

Qubit perp(const Qubit &q) {
    return Qubit(-std::conj(q(1)), std::conj(q(0)));
}

// <u_0 ... u_{n-1}|psi>, contracting the least significant party first.
cplx contract(std::span<const cplx> psi, std::span<const Qubit *const> rows, std::vector<cplx> &work) {
    work.assign(psi.begin(), psi.end());
    std::size_t len = work.size();
    for (std::size_t p = rows.size(); p-- > 0;) {
        cplx u0 = std::conj((*rows[p])(0));
        cplx u1 = std::conj((*rows[p])(1));
        len /= 2;
        for (std::size_t i = 0; i < len; i++) {
            work[i] = u0 * work[2 * i] + u1 * work[2 * i + 1];
        }
    }
    return work[0];
}

struct Evaluator {
    const PureState &psi;
    int n;
    std::vector<Qubit> a, b, bbar;
    std::vector<const Qubit *> rows;
    std::vector<cplx> work;

    explicit Evaluator(const PureState &state)
        : psi(state), n(state.n()), a(n), b(n), bbar(n), rows(n) {
    }

    void amplitudes(std::span<const double> x, std::vector<cplx> &out) {
        for (int k = 0; k < n; k++) {
            a[k] = bloch(x[4 * k], x[4 * k + 1]);
            b[k] = bloch(x[4 * k + 2], x[4 * k + 3]);
            bbar[k] = perp(b[k]);
        }
        out.clear();
        for (int p = 0; p < n; p++) {
            rows[p] = &a[p];
        }
        out.push_back(contract(psi.amplitudes(), rows, work));
        for (int k = 0; k < n; k++) {
            rows[k] = &b[k];
            out.push_back(contract(psi.amplitudes(), rows, work));
            rows[k] = &a[k];
        }
        for (int k = 1; k < n; k++) {
            rows[0] = &bbar[0];
            rows[k] = &bbar[k];
            out.push_back(contract(psi.amplitudes(), rows, work));
            rows[0] = &a[0];
            rows[k] = &a[k];
        }
    }
};

double constraint_sum(const std::vector<cplx> &amps) {
    double s = 0;
    for (std::size_t j = 1; j < amps.size(); j++) {
        s += std::norm(amps[j]);
    }
    return s;
}

// Minimum-norm Gauss-Newton on the real and imaginary parts of the 2n - 1
// constraint amplitudes.
int polish(Evaluator &ev, std::vector<double> &x, int max_steps) {
    const auto dim = static_cast<Eigen::Index>(x.size());
    const auto eqs = static_cast<Eigen::Index>(2 * (2 * ev.n - 1));
    std::vector<cplx> amps, plus, minus;
    auto residual = [&](const std::vector<double> &at, std::vector<cplx> &buf) {
        ev.amplitudes(at, buf);
        Eigen::VectorXd r(eqs);
        for (Eigen::Index j = 0; j < eqs / 2; j++) {
            r(2 * j) = buf[static_cast<std::size_t>(j + 1)].real();
            r(2 * j + 1) = buf[static_cast<std::size_t>(j + 1)].imag();
        }
        return r;
    };
    int steps = 0;
    Eigen::VectorXd r = residual(x, amps);
    for (; steps < max_steps; steps++) {
        if (r.squaredNorm() < 1e-28) {
            break;
        }
        Eigen::MatrixXd jac(eqs, dim);
        const double h = 1e-6;
        std::vector<double> xp = x;
        for (Eigen::Index i = 0; i < dim; i++) {
            double keep = xp[static_cast<std::size_t>(i)];
            xp[static_cast<std::size_t>(i)] = keep + h;
            Eigen::VectorXd rp = residual(xp, plus);
            xp[static_cast<std::size_t>(i)] = keep - h;
            Eigen::VectorXd rm = residual(xp, minus);
            xp[static_cast<std::size_t>(i)] = keep;
            jac.col(i) = (rp - rm) / (2 * h);
        }
        Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
        if (!step.allFinite()) {
            break;
        }
        // Halve until the residual decreases.
        double scale = 1;
        bool improved = false;
        for (int tries = 0; tries < 8; tries++) {
            std::vector<double> trial = x;
            for (Eigen::Index i = 0; i < dim; i++) {
                trial[static_cast<std::size_t>(i)] += scale * step(i);
            }
            Eigen::VectorXd rt = residual(trial, plus);
            if (rt.squaredNorm() < r.squaredNorm()) {
                x = std::move(trial);
                r = std::move(rt);
                improved = true;
                break;
            }
            scale /= 2;
        }
        if (!improved) {
            break;
        }
    }
    return steps;
}

}  // namespace

MeasurementSettings settings_from_angles(int n, std::span<const double> angles) {
    if (angles.size() != static_cast<std::size_t>(4 * n)) {
        throw DimensionMismatch("expected 4n angles");
    }
    std::vector<PartySettings> parties;
    for (int k = 0; k < n; k++) {
        parties.push_back({Ray::from_bloch(angles[4 * k], angles[4 * k + 1]),
                           Ray::from_bloch(angles[4 * k + 2], angles[4 * k + 3])});
    }
    return MeasurementSettings(std::move(parties));
}

std::vector<cplx> hardy_amplitudes(const PureState &psi, std::span<const double> angles) {
    if (angles.size() != static_cast<std::size_t>(4 * psi.n())) {
        throw DimensionMismatch("expected 4n angles");
    }
    Evaluator ev(psi);
    std::vector<cplx> out;
    ev.amplitudes(angles, out);
    return out;
}

SearchResult find_settings(const PureState &psi, const SearchConfig &cfg) {
    if (cfg.multistarts <= 0 || cfg.max_iters <= 0 || !(cfg.mu > 0) || !(cfg.eps_zero > 0) ||
        !(cfg.delta_pos > 0)) {
        throw InvalidArgument("search configuration values must be positive");
    }
    const int n = psi.n();
    Evaluator ev(psi);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> polar(0, kPi);
    std::uniform_real_distribution<double> azimuth(0, 2 * kPi);

    SearchResult result;
    result.max_residual = std::numeric_limits<double>::infinity();
    std::vector<cplx> amps;
    auto objective = [&](std::span<const double> x) {
        ev.amplitudes(x, amps);
        return constraint_sum(amps) - cfg.mu * std::norm(amps[0]);
    };

    for (int start = 0; start < cfg.multistarts; start++) {
        result.starts = start + 1;
        std::vector<double> x0(static_cast<std::size_t>(4 * n));
        for (int k = 0; k < 2 * n; k++) {
            x0[static_cast<std::size_t>(2 * k)] = polar(rng);
            x0[static_cast<std::size_t>(2 * k + 1)] = azimuth(rng);
        }
        MinimizeResult nm = nelder_mead(objective, x0, 0.4, cfg.max_iters, 1e-7);
        result.iterations += nm.iterations;

        std::vector<double> x = nm.x;
        ev.amplitudes(x, amps);
        if (std::norm(amps[0]) <= cfg.delta_pos) {
            continue;
        }
        result.iterations += polish(ev, x, 40);
        ev.amplitudes(x, amps);
        double p = std::norm(amps[0]);
        double res = constraint_sum(amps);

        MeasurementSettings settings = settings_from_angles(n, x);
        HardyReport report =
            hardy_conditions(born_distribution(psi, settings), 0, {cfg.eps_zero, cfg.delta_pos});
        double worst = *std::max_element(report.zero_residuals.begin(), report.zero_residuals.end());
        result.max_residual = std::min(result.max_residual, worst);
        if (res < cfg.eps_zero && p > cfg.delta_pos && report.passed) {
            result.found = true;
            result.settings = std::move(settings);
            result.p_success = report.p_success;
            result.max_residual = worst;
            return result;
        }
    }
    return result;
}

ExperimentSummary random_experiment(
    int n, int count, std::uint64_t seed, const SearchConfig &cfg, int lp_subsample, int jobs) {
    if (n != 3 && n != 4) {
        throw InvalidArgument("the random-state experiment runs for n = 3 or n = 4");
    }
    if (count < 1) {
        throw InvalidArgument("count must be positive");
    }
    ExperimentSummary summary;
    summary.n = n;
    summary.count = count;
    summary.records.resize(static_cast<std::size_t>(count));

    std::vector<std::optional<MeasurementSettings>> found(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next++; i < count; i = next++) {
            ExperimentRecord &rec = summary.records[static_cast<std::size_t>(i)];
            rec.index = i;
            std::uint64_t stream = derive_seed(seed, static_cast<std::uint64_t>(i));
            std::uint64_t state_seed = stream;
            PureState psi = haar_random_pure(n, state_seed);
            for (std::uint64_t attempt = 1; !genuine_entanglement_check(psi, 1e-4); attempt++) {
                state_seed = derive_seed(stream, attempt);
                psi = haar_random_pure(n, state_seed);
            }
            rec.sub_seed = state_seed;
            SearchConfig local = cfg;
            local.seed = derive_seed(cfg.seed ^ state_seed, 0x5EA7C4ull);
            SearchResult res = find_settings(psi, local);
            rec.passed = res.found;
            rec.p_success = res.p_success;
            rec.max_residual = res.max_residual;
            rec.iterations = res.iterations;
            found[static_cast<std::size_t>(i)] = std::move(res.settings);
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    if (n == 3 && lp_subsample > 0) {
        static const ModelVertexSet bilocal = bilocal_ns_vertices();
        int checked = 0;
        for (auto &rec : summary.records) {
            if (checked >= lp_subsample) {
                break;
            }
            if (!rec.passed) {
                continue;
            }
            PureState psi = haar_random_pure(n, rec.sub_seed);
            JointDistribution d = born_distribution(psi, *found[static_cast<std::size_t>(rec.index)]);
            LPOutcome lp = lp_membership(d, bilocal);
            rec.lp_checked = true;
            rec.lp_infeasible = !lp.feasible;
            rec.lp_margin = lp.margin;
            checked++;
        }
    }
    for (const auto &rec : summary.records) {
        (rec.passed ? summary.passed : summary.failed)++;
    }
    return summary;
}

}  // namespace nonloc
