// Copyright 2026 The dicke-sim Authors
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

#ifndef DICKE_SYMMETRIC_STATE_HPP
#define DICKE_SYMMETRIC_STATE_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace dicke {

using cplx = std::complex<double>;

/// Tolerance used when validating that a state crossing an API boundary is normalized.
inline constexpr double kNormTolerance = 1e-12;

/// Pure permutationally-symmetric state of n qubits, stored as the n+1 amplitudes
/// of the Dicke basis |0>, ..., |n> (index = Hamming weight).
///
/// Instances are always normalized. A 0-qubit state (a single amplitude of modulus
/// one) is representable; it is what remains after every qubit has been measured.
class SymmetricKet {
   public:
    /// Divides the amplitudes by their Euclidean norm. Throws DegenerateStateError
    /// when all amplitudes vanish and DomainError on an empty vector.
    static SymmetricKet normalized(std::vector<cplx> amps);

    int n() const noexcept {
        return static_cast<int>(amps_.size()) - 1;
    }
    std::span<const cplx> amps() const noexcept {
        return amps_;
    }
    cplx operator[](int nu) const {
        return amps_[static_cast<std::size_t>(nu)];
    }

    friend bool operator==(const SymmetricKet &, const SymmetricKet &) = default;

   private:
    explicit SymmetricKet(std::vector<cplx> amps) : amps_(std::move(amps)) {
    }
    std::vector<cplx> amps_;
};

/// Mixed permutationally-symmetric state: rho = sum alpha[mu][nu] |mu><nu| over the
/// Dicke basis. Stored row-major, (n+1)x(n+1). Always Hermitian with unit trace.
class SymmetricDensity {
   public:
    /// Validates hermiticity (1e-10, relative to the trace) and divides by the trace.
    /// Throws DomainError on a size mismatch or non-Hermitian input and
    /// DegenerateStateError when the trace is not positive.
    static SymmetricDensity normalized(int n, std::vector<cplx> alpha);

    /// alpha = I / (n+1).
    static SymmetricDensity maximally_mixed(int n);

    int n() const noexcept {
        return n_;
    }
    int dim() const noexcept {
        return n_ + 1;
    }
    cplx operator()(int mu, int nu) const {
        return alpha_[static_cast<std::size_t>(mu) * static_cast<std::size_t>(dim()) +
                      static_cast<std::size_t>(nu)];
    }
    std::span<const cplx> data() const noexcept {
        return alpha_;
    }
    double trace() const;

    friend bool operator==(const SymmetricDensity &, const SymmetricDensity &) = default;

   private:
    SymmetricDensity(int n, std::vector<cplx> alpha) : n_(n), alpha_(std::move(alpha)) {
    }
    int n_;
    std::vector<cplx> alpha_;
};

/// One term of the bipartite expansion |nu>_n = sum_mu Xi |nu-mu>_{n-k} (x) |mu>_k.
struct SplitCoefficient {
    int mu;
    double value;
};

/// The two branches of |Psi> = sum_nu c0[nu] |nu>_{n-1}|0> + c1[nu] |nu>_{n-1}|1>.
struct QubitBranches {
    std::vector<cplx> c0;
    std::vector<cplx> c1;
};

/// Dicke basis state |nu> on n qubits.
SymmetricKet basis_state(int n, int nu);

/// Normalized ket from n+1 arbitrary (not all zero) amplitudes.
SymmetricKet make_ket(int n, std::vector<cplx> amps);

/// (|0> + |n>)/sqrt(2).
SymmetricKet noon_state(int n);

/// n copies of cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, in the Dicke basis.
SymmetricKet product_state(int n, double theta, double phi);

/// Coefficient of |nu-mu>_U (x) |mu>_V in |nu>_n, where V holds k of the n qubits:
/// sqrt(C(n-k, nu-mu) C(k, mu) / C(n, nu)), and exactly zero outside the support
/// mu <= nu, nu - mu <= n - k. Never forms the binomials themselves.
double xi_coefficient(int k, int n, int mu, int nu);

/// Nonzero coefficients of the split of |nu>_n into blocks of n-k and k qubits,
/// ordered by increasing mu.
std::vector<SplitCoefficient> general_split(int n, int nu, int k);

/// Splits off qubit 1 (least significant position).
QubitBranches split_last_qubit(const SymmetricKet &ket);

SymmetricDensity to_density(const SymmetricKet &ket);

}  // namespace dicke

#endif  // DICKE_SYMMETRIC_STATE_HPP
