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

#ifndef NONLOC_MEASURE_H
#define NONLOC_MEASURE_H

#include <cstdint>
#include <span>
#include <vector>

#include "nonloc/qstate.h"

namespace nonloc {

/// Unnormalized single-qubit vector c0|0> + c1|1>. The point at infinity of
/// the |0> + x*|1> chart is c0 = 0.
class Ray {
   public:
    Ray(cplx c0, cplx c1);

    /// |0> + x* |1>.
    static Ray from_param(cplx x);
    /// cos(t/2)|0> + e^{i phi} sin(t/2)|1>.
    static Ray from_bloch(double t, double phi);
    static Ray from_qubit(const Qubit &q);

    cplx c0() const {
        return c0_;
    }
    cplx c1() const {
        return c1_;
    }
    double norm() const;
    Qubit normalized() const;
    /// Unit vector orthogonal to this ray.
    Qubit orthogonal() const;
    /// Normalized ray for outcome 0 or its complement for outcome 1.
    Qubit outcome(int r) const {
        return r == 0 ? normalized() : orthogonal();
    }
    Ray transformed(const Mat2 &u) const;

   private:
    cplx c0_;
    cplx c1_;
};

struct PartySettings {
    Ray a;
    Ray b;
    const Ray &setting(int s) const {
        return s == 0 ? a : b;
    }
};

/// Two alternative observables per party; setting bit 0 selects a, 1 selects b.
/// Outcome 0 projects onto the ray, outcome 1 onto its orthogonal complement.
class MeasurementSettings {
   public:
    explicit MeasurementSettings(std::vector<PartySettings> parties);
    /// The same pair on every party.
    static MeasurementSettings uniform(int n, const Ray &a, const Ray &b);

    int n() const {
        return static_cast<int>(parties_.size());
    }
    const PartySettings &party(int p) const {
        return parties_[static_cast<std::size_t>(p)];
    }
    std::span<const PartySettings> parties() const {
        return parties_;
    }
    /// max_k |<a_k|b_k>| after normalization.
    double max_setting_overlap() const;
    /// Applies u to every ray of every party.
    MeasurementSettings transformed(const Mat2 &u) const;

   private:
    std::vector<PartySettings> parties_;
};

/// Dense table P[s][r] with s = setting bits, r = outcome bits, both indexed
/// with the qstate bit convention (party 0 = most significant bit).
class JointDistribution {
   public:
    /// Validates: entries >= -1e-12 and every row sums to one within 1e-10.
    JointDistribution(int n, std::vector<double> table);
    static JointDistribution uniform(int n);

    int n() const {
        return n_;
    }
    std::size_t dim() const {
        return dim_of(n_);
    }
    double at(std::size_t s, std::size_t r) const {
        return table_[s * dim() + r];
    }
    std::span<const double> row(std::size_t s) const {
        return std::span<const double>(table_).subspan(s * dim(), dim());
    }
    /// Row-major, s outer.
    std::span<const double> raw() const {
        return table_;
    }
    /// The table with slightly negative entries clamped to zero, for output.
    std::vector<double> clamped() const;

   private:
    int n_;
    std::vector<double> table_;
};

/// Normalized tensor product of the projector rays selected by (s, r).
Eigen::VectorXcd product_vector(const MeasurementSettings &settings, std::size_t s, std::size_t r);

JointDistribution born_distribution(const PureState &psi, const MeasurementSettings &settings);
JointDistribution born_distribution(const DensityMatrix &rho, const MeasurementSettings &settings);

/// Largest change of any (n-1)-party marginal when one party switches setting.
double ns_residual(const JointDistribution &d);

/// Sum of P[s][r'] over r' agreeing with r on `party_mask` (bit p = party p).
/// Throws SignalingDistribution when the value depends on the settings of the
/// complement parties by more than `tol`.
double marginal(
    const JointDistribution &d, std::uint32_t party_mask, std::size_t s, std::size_t r, double tol = 1e-8);

}  // namespace nonloc

#endif  // NONLOC_MEASURE_H
