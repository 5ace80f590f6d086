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

#include "nonloc/qstate.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "nonloc/error.h"
#include "nonloc/optimize.h"

namespace nonloc {

namespace {

void check_party_count(int n) {
    if (n < kMinParties || n > kMaxParties) {
        throw InvalidArgument("party count " + std::to_string(n) + " outside [2, 8]");
    }
}

Qubit bloch_ray(double t, double phi) {
    return Qubit(std::cos(t / 2), std::polar(1.0, phi) * std::sin(t / 2));
}

// Rows are <beta| and <beta_perp|, so the matrix sends beta to |0>.
Mat2 rotation_to_zero(const Qubit &beta) {
    Mat2 u;
    u << std::conj(beta(0)), std::conj(beta(1)), -beta(1), beta(0);
    return u;
}

cplx product_overlap(const SymmetricState &s, const Qubit &beta) {
    const int n = s.n();
    cplx b0 = std::conj(beta(0));
    cplx b1 = std::conj(beta(1));
    cplx total = 0;
    for (int k = 0; k <= n; k++) {
        total += binomial(n, k) * std::pow(b0, n - k) * std::pow(b1, k) * s.h(k);
    }
    return total;
}

cplx rotated_h1(const SymmetricState &s, const Qubit &beta) {
    // <beta^(n-1) beta_perp|psi>, written via the rotated Dicke amplitude.
    PureState rotated = apply_uniform(dicke_expand(s), rotation_to_zero(beta));
    return rotated[1];
}

// Newton iteration on h_1(beta) = 0, moving beta along its orthogonal
// complement so that the poles of the Bloch chart play no role.
Qubit polish_stationary(const SymmetricState &s, Qubit beta) {
    for (int it = 0; it < 12; it++) {
        cplx g = rotated_h1(s, beta);
        if (std::abs(g) < 1e-15) {
            break;
        }
        Qubit perp(-std::conj(beta(1)), std::conj(beta(0)));
        auto moved = [&](cplx eps) {
            Qubit v = beta + eps * perp;
            return Qubit(v / v.norm());
        };
        const double h = 1e-7;
        cplx dre = (rotated_h1(s, moved(cplx(h, 0))) - rotated_h1(s, moved(cplx(-h, 0)))) / (2 * h);
        cplx dim = (rotated_h1(s, moved(cplx(0, h))) - rotated_h1(s, moved(cplx(0, -h)))) / (2 * h);
        Eigen::Matrix2d jac;
        jac << dre.real(), dim.real(), dre.imag(), dim.imag();
        Eigen::Vector2d rhs(-g.real(), -g.imag());
        Eigen::Vector2d step = jac.colPivHouseholderQr().solve(rhs);
        if (!step.allFinite() || step.norm() > 0.1) {
            break;
        }
        beta = moved(cplx(step(0), step(1)));
    }
    return beta;
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return std::round(r);
}

PureState::PureState(int n, std::vector<cplx> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_party_count(n);
    if (amps_.size() != dim_of(n)) {
        throw DimensionMismatch(
            "expected " + std::to_string(dim_of(n)) + " amplitudes, got " + std::to_string(amps_.size()));
    }
    double norm2 = 0;
    for (const auto &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvalidArgument("non-finite amplitude");
        }
        norm2 += std::norm(a);
    }
    if (norm2 <= 0) {
        throw InvalidArgument("zero state vector");
    }
    double inv = 1 / std::sqrt(norm2);
    for (auto &a : amps_) {
        a *= inv;
    }
}

Eigen::VectorXcd PureState::vector() const {
    return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

PureState PureState::basis(int n, std::size_t index) {
    std::vector<cplx> amps(dim_of(n), 0.0);
    if (index >= amps.size()) {
        throw InvalidArgument("basis index out of range");
    }
    amps[index] = 1.0;
    return PureState(n, std::move(amps));
}

PureState PureState::from_vector(int n, const Eigen::VectorXcd &v) {
    return PureState(n, std::vector<cplx>(v.data(), v.data() + v.size()));
}

DensityMatrix::DensityMatrix(int n, Eigen::MatrixXcd entries) : n_(n), entries_(std::move(entries)) {
    check_party_count(n);
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    if (entries_.rows() != d || entries_.cols() != d) {
        throw DimensionMismatch("density matrix must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - cplx(1.0)) > 1e-12) {
        throw InvalidArgument("density matrix trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(entries_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
        throw InvalidArgument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    Eigen::VectorXcd v = psi.vector();
    return DensityMatrix(psi.n(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    check_party_count(n);
    auto d = static_cast<Eigen::Index>(dim_of(n));
    return DensityMatrix(n, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

SymmetricState::SymmetricState(int n, std::vector<cplx> h) : n_(n), h_(std::move(h)) {
    check_party_count(n);
    if (h_.size() != static_cast<std::size_t>(n + 1)) {
        throw DimensionMismatch("expected " + std::to_string(n + 1) + " Dicke coefficients");
    }
    double norm2 = 0;
    for (int k = 0; k <= n; k++) {
        norm2 += binomial(n, k) * std::norm(h_[static_cast<std::size_t>(k)]);
    }
    if (!(norm2 > 0) || !std::isfinite(norm2)) {
        throw InvalidArgument("symmetric state has zero or non-finite norm");
    }
    double inv = 1 / std::sqrt(norm2);
    for (auto &c : h_) {
        c *= inv;
    }
}

SymmetricState SymmetricState::ghz(int n, double theta) {
    std::vector<cplx> h(static_cast<std::size_t>(n + 1), 0.0);
    h.front() = std::cos(theta);
    h.back() = std::sin(theta);
    return SymmetricState(n, std::move(h));
}

SymmetricState SymmetricState::w(int n) {
    std::vector<cplx> h(static_cast<std::size_t>(n + 1), 0.0);
    h[1] = 1.0;
    return SymmetricState(n, std::move(h));
}

SymmetricState SymmetricState::product_zero(int n) {
    std::vector<cplx> h(static_cast<std::size_t>(n + 1), 0.0);
    h[0] = 1.0;
    return SymmetricState(n, std::move(h));
}

bool SymmetricState::is_magic(double tol) const {
    return std::abs(h_[0]) > tol && std::abs(h_[1]) <= tol;
}

Bipartition::Bipartition(int n, std::uint32_t party_mask) : n_(n) {
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    party_mask &= full;
    if (party_mask == 0 || party_mask == full) {
        throw InvalidArgument("bipartition side must be a nonempty proper subset");
    }
    std::uint32_t other = full & ~party_mask;
    int a = std::popcount(party_mask);
    int b = std::popcount(other);
    if (a < b || (a == b && (party_mask & 1u))) {
        alpha_ = party_mask;
    } else {
        alpha_ = other;
    }
}

std::vector<int> Bipartition::alpha_parties() const {
    std::vector<int> out;
    for (int p = 0; p < n_; p++) {
        if (alpha_ & (1u << p)) {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<Bipartition> all_bipartitions(int n) {
    std::vector<Bipartition> cuts;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t m = 1; m < full; m++) {
        Bipartition cut(n, m);
        if (cut.alpha() == m) {
            cuts.push_back(cut);
        }
    }
    return cuts;
}

PureState dicke_expand(const SymmetricState &s) {
    const int n = s.n();
    std::vector<cplx> amps(dim_of(n));
    for (std::size_t b = 0; b < amps.size(); b++) {
        amps[b] = s.h(std::popcount(static_cast<unsigned>(b)));
    }
    return PureState(n, std::move(amps));
}

SymmetricState symmetric_from_pure(const PureState &psi) {
    const int n = psi.n();
    std::vector<cplx> h(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; k++) {
        h[static_cast<std::size_t>(k)] = psi[(std::size_t{1} << k) - 1];
    }
    return SymmetricState(n, std::move(h));
}

PureState apply_uniform(const PureState &psi, const Mat2 &u) {
    const int n = psi.n();
    std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    for (int p = 0; p < n; p++) {
        const std::size_t bit = party_bit(n, p);
        for (std::size_t b = 0; b < amps.size(); b++) {
            if (b & bit) {
                continue;
            }
            cplx a0 = amps[b];
            cplx a1 = amps[b | bit];
            amps[b] = u(0, 0) * a0 + u(0, 1) * a1;
            amps[b | bit] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return PureState(n, std::move(amps));
}

std::vector<double> schmidt_coefficients(const PureState &psi, const Bipartition &cut) {
    const int n = psi.n();
    if (cut.n() != n) {
        throw DimensionMismatch("bipartition and state disagree on party count");
    }
    std::vector<int> left = cut.alpha_parties();
    std::vector<int> right;
    for (int p = 0; p < n; p++) {
        if (!(cut.alpha() & (1u << p))) {
            right.push_back(p);
        }
    }
    auto pack = [n](std::size_t b, const std::vector<int> &parties) {
        std::size_t idx = 0;
        for (int p : parties) {
            idx = (idx << 1) | ((b & party_bit(n, p)) ? 1 : 0);
        }
        return static_cast<Eigen::Index>(idx);
    };
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(dim_of(static_cast<int>(left.size()))),
        static_cast<Eigen::Index>(dim_of(static_cast<int>(right.size()))));
    for (std::size_t b = 0; b < psi.dim(); b++) {
        m(pack(b, left), pack(b, right)) = psi[b];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto &sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

bool genuine_entanglement_check(const PureState &psi, double eps) {
    for (const auto &cut : all_bipartitions(psi.n())) {
        auto sv = schmidt_coefficients(psi, cut);
        if (sv.size() < 2 || sv[1] <= eps) {
            return false;
        }
    }
    return true;
}

ClosestProduct closest_product_state(const SymmetricState &s) {
    constexpr int kGrid = 64;
    constexpr int kStarts = 5;
    const double pi = std::numbers::pi;

    struct Cell {
        double value, t, phi;
    };
    std::vector<Cell> cells;
    cells.reserve(kGrid * kGrid);
    for (int i = 0; i < kGrid; i++) {
        double t = pi * (i + 0.5) / kGrid;
        for (int j = 0; j < kGrid; j++) {
            double phi = 2 * pi * (j + 0.5) / kGrid;
            cells.push_back({std::abs(product_overlap(s, bloch_ray(t, phi))), t, phi});
        }
    }
    std::partial_sort(cells.begin(), cells.begin() + kStarts, cells.end(), [](const Cell &a, const Cell &b) {
        return a.value > b.value;
    });

    // The poles are candidates of their own: the chart is singular there and
    // |0> is the preferred answer on ties.
    std::vector<Qubit> candidates = {Qubit(1, 0), Qubit(0, 1)};
    auto objective = [&s](std::span<const double> x) {
        return -std::abs(product_overlap(s, bloch_ray(x[0], x[1])));
    };
    for (int c = 0; c < kStarts; c++) {
        auto res = nelder_mead(objective, {cells[c].t, cells[c].phi}, pi / kGrid, 4000, 1e-13);
        candidates.push_back(polish_stationary(s, bloch_ray(res.x[0], res.x[1])));
    }

    double best = -1;
    for (const auto &q : candidates) {
        best = std::max(best, std::abs(product_overlap(s, q)));
    }
    const Qubit *chosen = nullptr;
    for (const auto &q : candidates) {
        if (std::abs(product_overlap(s, q)) < best - 1e-12) {
            continue;
        }
        if (std::abs(rotated_h1(s, q)) > 1e-8) {
            continue;
        }
        if (chosen == nullptr || std::abs(q(0)) > std::abs((*chosen)(0)) + 1e-12) {
            chosen = &q;
        }
    }
    if (chosen == nullptr) {
        throw OptimizerDidNotConverge("no refined product state satisfies |h_1| <= 1e-8");
    }
    // Strip the irrelevant global phase so that the first component is real.
    Qubit ray = *chosen;
    if (std::abs(ray(0)) > 0) {
        ray *= std::conj(ray(0)) / std::abs(ray(0));
    }
    return {ray, std::min(1.0, std::abs(product_overlap(s, ray)))};
}

MagicBasis to_magic_basis(const SymmetricState &s) {
    ClosestProduct cps = closest_product_state(s);
    Mat2 u = rotation_to_zero(cps.ray);
    SymmetricState rotated = symmetric_from_pure(apply_uniform(dicke_expand(s), u));
    if (std::abs(rotated.h(1)) > 1e-8) {
        throw OptimizerDidNotConverge("rotated state keeps |h_1| > 1e-8");
    }
    return {std::move(rotated), u};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

PureState haar_random_pure(int n, std::uint64_t seed) {
    check_party_count(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(dim_of(n));
    for (auto &a : amps) {
        double re = gauss(rng);
        double im = gauss(rng);
        a = cplx(re, im);
    }
    return PureState(n, std::move(amps));
}

SymmetricState haar_random_symmetric(int n, std::uint64_t seed) {
    check_party_count(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> h(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; k++) {
        double re = gauss(rng);
        double im = gauss(rng);
        h[static_cast<std::size_t>(k)] = cplx(re, im) / std::sqrt(binomial(n, k));
    }
    return SymmetricState(n, std::move(h));
}

}  // namespace nonloc
