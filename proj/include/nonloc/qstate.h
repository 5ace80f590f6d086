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

#ifndef NONLOC_QSTATE_H
#define NONLOC_QSTATE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nonloc {

using cplx = std::complex<double>;
using Qubit = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr int kMinParties = 2;
inline constexpr int kMaxParties = 8;

// Basis index convention: party 0 (written "party 1" in reports) is the most
// significant bit, so b = sum_k r_k * 2^(n-1-k) for zero-based k.
constexpr std::uint32_t party_bit(int n, int party) {
    return std::uint32_t{1} << (n - 1 - party);
}

constexpr std::size_t dim_of(int n) {
    return std::size_t{1} << n;
}

double binomial(int n, int k);

/// Normalized n-qubit pure state stored as a dense amplitude table.
class PureState {
   public:
    /// Normalizes on construction. Throws DimensionMismatch if the length is
    /// not 2^n and InvalidArgument if n is out of range or the vector is zero.
    PureState(int n, std::vector<cplx> amplitudes);

    int n() const {
        return n_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    cplx operator[](std::size_t b) const {
        return amps_[b];
    }
    Eigen::VectorXcd vector() const;

    static PureState basis(int n, std::size_t index);
    static PureState from_vector(int n, const Eigen::VectorXcd &v);

   private:
    int n_;
    std::vector<cplx> amps_;
};

/// Mixed n-qubit state. Hermitian, unit trace and positive semidefinite within
/// 1e-12 / 1e-12 / 1e-10; checked on construction.
class DensityMatrix {
   public:
    DensityMatrix(int n, Eigen::MatrixXcd entries);

    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(int n);

    int n() const {
        return n_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(entries_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return entries_;
    }

   private:
    int n_;
    Eigen::MatrixXcd entries_;
};

/// Permutation-symmetric state in the unnormalized Dicke convention
///   |psi> = sum_k h_k sum_{|alpha| = k} |0_{not alpha} 1_alpha>,
/// so the normalization is sum_k C(n,k) |h_k|^2 = 1.
class SymmetricState {
   public:
    /// Rescales h so that the binomially weighted norm is one.
    SymmetricState(int n, std::vector<cplx> h);

    static SymmetricState ghz(int n, double theta);
    static SymmetricState w(int n);
    /// |0>^n.
    static SymmetricState product_zero(int n);

    int n() const {
        return n_;
    }
    std::span<const cplx> h() const {
        return h_;
    }
    cplx h(int k) const {
        return h_[static_cast<std::size_t>(k)];
    }
    /// h_0 != 0 and |h_1| <= tol.
    bool is_magic(double tol = 1e-10) const;

   private:
    int n_;
    std::vector<cplx> h_;
};

/// A cut alpha | complement of the party set. Stored canonically: the smaller
/// side, and on a tie the side containing party 0.
class Bipartition {
   public:
    Bipartition(int n, std::uint32_t party_mask);

    int n() const {
        return n_;
    }
    /// Bit p set iff zero-based party p is in alpha.
    std::uint32_t alpha() const {
        return alpha_;
    }
    std::uint32_t complement() const {
        return ((std::uint32_t{1} << n_) - 1) & ~alpha_;
    }
    std::vector<int> alpha_parties() const;
    bool operator==(const Bipartition &) const = default;

   private:
    int n_;
    std::uint32_t alpha_;
};

/// Every unordered cut of n parties, 2^(n-1) - 1 of them.
std::vector<Bipartition> all_bipartitions(int n);

PureState dicke_expand(const SymmetricState &s);

/// Reads Dicke coefficients from a state assumed symmetric (amplitude of the
/// representative index with the k lowest-order parties excited).
SymmetricState symmetric_from_pure(const PureState &psi);

/// Applies the same single-qubit unitary to every party.
PureState apply_uniform(const PureState &psi, const Mat2 &u);

/// Singular values of the amplitude table reshaped along the cut, descending.
std::vector<double> schmidt_coefficients(const PureState &psi, const Bipartition &cut);

/// True iff the second Schmidt coefficient exceeds eps on every cut.
bool genuine_entanglement_check(const PureState &psi, double eps);

struct ClosestProduct {
    Qubit ray;  // unit vector beta with |<beta^n|psi>| maximal
    double overlap;
};

/// Maximizes |<beta^n|psi>| over single-qubit rays: 64x64 grid over the Bloch
/// sphere, Nelder-Mead from the 5 best cells and a Newton polish of the
/// stationarity condition. Throws OptimizerDidNotConverge when the rotated
/// state keeps |h_1| > 1e-8.
ClosestProduct closest_product_state(const SymmetricState &s);

struct MagicBasis {
    SymmetricState state;
    Mat2 rotation;  // state = rotation^n applied to the input
};

MagicBasis to_magic_basis(const SymmetricState &s);

/// Independent standard complex Gaussians, normalized. Deterministic in seed.
PureState haar_random_pure(int n, std::uint64_t seed);

/// Haar-random state of the symmetric subspace (Gaussian in the normalized
/// Dicke basis).
SymmetricState haar_random_symmetric(int n, std::uint64_t seed);

/// Mixes a seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace nonloc

#endif  // NONLOC_QSTATE_H
