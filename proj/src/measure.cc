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

#include "nonloc/measure.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nonloc/error.h"

namespace nonloc {

namespace {

// Rows <outcome 0| and <outcome 1| of the chosen setting of one party.
Mat2 outcome_rows(const Ray &ray) {
    Qubit v0 = ray.outcome(0);
    Qubit v1 = ray.outcome(1);
    Mat2 m;
    m << std::conj(v0(0)), std::conj(v0(1)), std::conj(v1(0)), std::conj(v1(1));
    return m;
}

void apply_party(std::vector<cplx> &amps, int n, int party, const Mat2 &m) {
    const std::size_t bit = party_bit(n, party);
    for (std::size_t b = 0; b < amps.size(); b++) {
        if (b & bit) {
            continue;
        }
        cplx a0 = amps[b];
        cplx a1 = amps[b | bit];
        amps[b] = m(0, 0) * a0 + m(0, 1) * a1;
        amps[b | bit] = m(1, 0) * a0 + m(1, 1) * a1;
    }
}

Eigen::MatrixXcd setting_operator(const MeasurementSettings &settings, std::size_t s) {
    const int n = settings.n();
    Eigen::MatrixXcd op(1, 1);
    op(0, 0) = 1.0;
    for (int p = 0; p < n; p++) {
        int bit = (s & party_bit(n, p)) ? 1 : 0;
        Mat2 rows = outcome_rows(settings.party(p).setting(bit));
        Eigen::MatrixXcd next(op.rows() * 2, op.cols() * 2);
        for (Eigen::Index i = 0; i < op.rows(); i++) {
            for (Eigen::Index j = 0; j < op.cols(); j++) {
                next.block<2, 2>(2 * i, 2 * j) = op(i, j) * rows;
            }
        }
        op = std::move(next);
    }
    return op;
}

void check_n(int a, int b) {
    if (a != b) {
        throw DimensionMismatch("dimension mismatch: state has " + std::to_string(a) + " parties, settings have " +
                                std::to_string(b));
    }
}

}  // namespace

Ray::Ray(cplx c0, cplx c1) : c0_(c0), c1_(c1) {
    double n2 = std::norm(c0) + std::norm(c1);
    if (!(n2 > 0) || !std::isfinite(n2)) {
        throw InvalidArgument("ray must be a finite nonzero vector");
    }
}

Ray Ray::from_param(cplx x) {
    return Ray(1.0, std::conj(x));
}

Ray Ray::from_bloch(double t, double phi) {
    return Ray(std::cos(t / 2), std::polar(1.0, phi) * std::sin(t / 2));
}

Ray Ray::from_qubit(const Qubit &q) {
    return Ray(q(0), q(1));
}

double Ray::norm() const {
    return std::sqrt(std::norm(c0_) + std::norm(c1_));
}

Qubit Ray::normalized() const {
    double inv = 1 / norm();
    return Qubit(c0_ * inv, c1_ * inv);
}

Qubit Ray::orthogonal() const {
    double inv = 1 / norm();
    return Qubit(-std::conj(c1_) * inv, std::conj(c0_) * inv);
}

Ray Ray::transformed(const Mat2 &u) const {
    Qubit v = u * Qubit(c0_, c1_);
    return Ray(v(0), v(1));
}

MeasurementSettings::MeasurementSettings(std::vector<PartySettings> parties) : parties_(std::move(parties)) {
    if (parties_.size() < static_cast<std::size_t>(kMinParties) ||
        parties_.size() > static_cast<std::size_t>(kMaxParties)) {
        throw InvalidArgument("settings need between 2 and 8 parties");
    }
}

MeasurementSettings MeasurementSettings::uniform(int n, const Ray &a, const Ray &b) {
    return MeasurementSettings(std::vector<PartySettings>(static_cast<std::size_t>(n), PartySettings{a, b}));
}

double MeasurementSettings::max_setting_overlap() const {
    double worst = 0;
    for (const auto &p : parties_) {
        worst = std::max(worst, std::abs(p.a.normalized().dot(p.b.normalized())));
    }
    return worst;
}

MeasurementSettings MeasurementSettings::transformed(const Mat2 &u) const {
    std::vector<PartySettings> out;
    out.reserve(parties_.size());
    for (const auto &p : parties_) {
        out.push_back({p.a.transformed(u), p.b.transformed(u)});
    }
    return MeasurementSettings(std::move(out));
}

JointDistribution::JointDistribution(int n, std::vector<double> table) : n_(n), table_(std::move(table)) {
    if (n < 1 || n > kMaxParties) {
        throw InvalidArgument("party count outside [1, 8]");
    }
    const std::size_t d = dim_of(n);
    if (table_.size() != d * d) {
        throw DimensionMismatch("distribution table must have 4^n entries");
    }
    for (std::size_t s = 0; s < d; s++) {
        double sum = 0;
        for (std::size_t r = 0; r < d; r++) {
            double v = table_[s * d + r];
            if (!std::isfinite(v) || v < -1e-12) {
                throw InvalidArgument("distribution entry is negative or non-finite");
            }
            sum += v;
        }
        if (std::abs(sum - 1) > 1e-10) {
            throw InvalidArgument("distribution row " + std::to_string(s) + " does not sum to one");
        }
    }
}

JointDistribution JointDistribution::uniform(int n) {
    const std::size_t d = dim_of(n);
    return JointDistribution(n, std::vector<double>(d * d, 1.0 / static_cast<double>(d)));
}

std::vector<double> JointDistribution::clamped() const {
    std::vector<double> out(table_);
    for (auto &v : out) {
        v = std::max(v, 0.0);
    }
    return out;
}

Eigen::VectorXcd product_vector(const MeasurementSettings &settings, std::size_t s, std::size_t r) {
    const int n = settings.n();
    Eigen::VectorXcd v(1);
    v(0) = 1.0;
    for (int p = 0; p < n; p++) {
        int sb = (s & party_bit(n, p)) ? 1 : 0;
        int rb = (r & party_bit(n, p)) ? 1 : 0;
        Qubit q = settings.party(p).setting(sb).outcome(rb);
        Eigen::VectorXcd next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); i++) {
            next(2 * i) = v(i) * q(0);
            next(2 * i + 1) = v(i) * q(1);
        }
        v = std::move(next);
    }
    return v;
}

JointDistribution born_distribution(const PureState &psi, const MeasurementSettings &settings) {
    const int n = psi.n();
    check_n(n, settings.n());
    const std::size_t d = dim_of(n);
    std::vector<Mat2> rows[2];
    for (int bit = 0; bit < 2; bit++) {
        for (int p = 0; p < n; p++) {
            rows[bit].push_back(outcome_rows(settings.party(p).setting(bit)));
        }
    }
    std::vector<double> table(d * d);
    std::vector<cplx> work(d);
    for (std::size_t s = 0; s < d; s++) {
        work.assign(psi.amplitudes().begin(), psi.amplitudes().end());
        for (int p = 0; p < n; p++) {
            int bit = (s & party_bit(n, p)) ? 1 : 0;
            apply_party(work, n, p, rows[bit][static_cast<std::size_t>(p)]);
        }
        for (std::size_t r = 0; r < d; r++) {
            table[s * d + r] = std::norm(work[r]);
        }
    }
    return JointDistribution(n, std::move(table));
}

JointDistribution born_distribution(const DensityMatrix &rho, const MeasurementSettings &settings) {
    const int n = rho.n();
    check_n(n, settings.n());
    const std::size_t d = dim_of(n);
    std::vector<double> table(d * d);
    for (std::size_t s = 0; s < d; s++) {
        Eigen::MatrixXcd op = setting_operator(settings, s);
        Eigen::MatrixXcd rotated = op * rho.matrix() * op.adjoint();
        for (std::size_t r = 0; r < d; r++) {
            auto i = static_cast<Eigen::Index>(r);
            table[s * d + r] = rotated(i, i).real();
        }
    }
    return JointDistribution(n, std::move(table));
}

double ns_residual(const JointDistribution &d) {
    const int n = d.n();
    const std::size_t dim = d.dim();
    double worst = 0;
    for (int p = 0; p < n; p++) {
        const std::size_t bit = party_bit(n, p);
        for (std::size_t s = 0; s < dim; s++) {
            if (s & bit) {
                continue;
            }
            for (std::size_t r = 0; r < dim; r++) {
                if (r & bit) {
                    continue;
                }
                double with_a = d.at(s, r) + d.at(s, r | bit);
                double with_b = d.at(s | bit, r) + d.at(s | bit, r | bit);
                worst = std::max(worst, std::abs(with_a - with_b));
            }
        }
    }
    return worst;
}

double marginal(const JointDistribution &d, std::uint32_t party_mask, std::size_t s, std::size_t r, double tol) {
    const int n = d.n();
    std::size_t keep = 0;
    for (int p = 0; p < n; p++) {
        if (party_mask & (1u << p)) {
            keep |= party_bit(n, p);
        }
    }
    if (keep == 0) {
        throw InvalidArgument("marginal needs a nonempty party subset");
    }
    auto value_at = [&](std::size_t setting) {
        double sum = 0;
        for (std::size_t rr = 0; rr < d.dim(); rr++) {
            if ((rr & keep) == (r & keep)) {
                sum += d.at(setting, rr);
            }
        }
        return sum;
    };
    double reference = value_at(s);
    const std::size_t free = (d.dim() - 1) & ~keep;
    // Enumerate every assignment of the complement settings.
    std::size_t sub = free;
    while (true) {
        std::size_t context = (s & keep) | sub;
        if (std::abs(value_at(context) - reference) > tol) {
            throw SignalingDistribution("marginal depends on the settings of the other parties");
        }
        if (sub == 0) {
            break;
        }
        sub = (sub - 1) & free;
    }
    return reference;
}

}  // namespace nonloc
