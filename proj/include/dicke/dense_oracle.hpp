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

#ifndef DICKE_DENSE_ORACLE_HPP
#define DICKE_DENSE_ORACLE_HPP

// Brute-force reference implementation over the full 2^n-dimensional space.
// Qubit positions are 1-based; position 1 is the least significant bit of a
// computational-basis index. Nothing here is optimized.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dicke/measurement.hpp"
#include "dicke/symmetric_state.hpp"

namespace dicke::dense {

/// Largest qubit counts the oracle accepts. Defaults to 12 (densities) and 20
/// (kets); the DICKE_SIM_DENSE_CAP environment variable overrides both.
struct DenseCap {
    int density;
    int ket;
};
DenseCap dense_cap();

struct DenseKet {
    int n;
    std::vector<cplx> amps;
};

struct DenseDensity {
    int n;
    std::vector<cplx> m;  // row-major 2^n x 2^n

    std::size_t dim() const noexcept {
        return std::size_t{1} << n;
    }
    cplx &operator()(std::size_t r, std::size_t c) {
        return m[r * dim() + c];
    }
    cplx operator()(std::size_t r, std::size_t c) const {
        return m[r * dim() + c];
    }
    double trace() const;
};

/// Bijection on {1, ..., n}; mapping[j-1] = pi(j). The qubit at position j moves to pi(j).
class Permutation {
   public:
    /// Throws DomainError unless mapping is a bijection on {1, ..., mapping.size()}.
    explicit Permutation(std::vector<int> mapping);
    static Permutation identity(int n);
    static Permutation transposition(int n, int a, int b);

    int size() const noexcept {
        return static_cast<int>(mapping_.size());
    }
    int operator()(int j) const {
        return mapping_[static_cast<std::size_t>(j - 1)];
    }
    Permutation inverse() const;
    /// (this o other)(j) = this(other(j)).
    Permutation compose(const Permutation &other) const;

   private:
    std::vector<int> mapping_;
};

std::size_t hamming_weight(std::uint64_t bits);

DenseKet expand(const SymmetricKet &ket);
DenseDensity expand(const SymmetricDensity &rho);
DenseDensity to_density(const DenseKet &ket);

DenseKet apply_permutation(const DenseKet &state, const Permutation &pi);
DenseDensity apply_permutation(const DenseDensity &state, const Permutation &pi);

/// Checks rho = P(pi) rho = rho P(pi)^dagger (max-entry norm, tolerance tol) for
/// adjacent transpositions of the sorted subset, which generate its symmetric group.
bool is_symmetric_over(const DenseDensity &rho, std::span<const int> positions, double tol);

/// Largest entry of P(pi) rho - rho or rho P(pi)^dagger - rho over those transpositions.
double symmetry_deviation(const DenseDensity &rho, std::span<const int> positions);

/// K rho K^dagger with K embedded at the given position.
DenseDensity apply_operator_at(const DenseDensity &rho, int position, const Mat2 &k);
DenseKet apply_operator_at(const DenseKet &ket, int position, const Mat2 &k);

/// sum_l K_l rho K_l^dagger.
DenseDensity apply_channel_at(const DenseDensity &rho, int position, std::span<const SingleQubitKraus> kraus);

struct DenseOutcome {
    int label;
    double probability;
    DenseDensity state;  // normalized when probability > 0, zero matrix otherwise
};
std::vector<DenseOutcome> measure_at(const DenseDensity &rho, int position, std::span<const SingleQubitKraus> kraus);

/// Traces out the listed positions; the remaining qubits keep their relative order
/// and are renumbered 1..n-|positions|.
DenseDensity partial_trace(const DenseDensity &rho, std::span<const int> positions);

/// Weight of the state outside the symmetric subspace: tr(rho) - tr(P_sym rho).
double symmetric_residual(const DenseDensity &rho);
double symmetric_residual(const DenseKet &ket);

/// Projects onto the Dicke basis. Throws NotSymmetricError (carrying the residual)
/// when more than tol of the weight lies outside the symmetric subspace.
SymmetricDensity compress(const DenseDensity &rho, double tol);
SymmetricKet compress(const DenseKet &ket, double tol);

/// <nu-mu|_{n-k} (x) <mu|_k applied to |nu>_n, the k-block on positions 1..k.
cplx split_inner_product(int n, int nu, int k, int mu);

/// |a> (x) |b> where b occupies the low positions.
DenseKet kron(const DenseKet &high, const DenseKet &low);

/// Inserts a single-qubit state at the given position of an (n-1)-qubit state.
DenseKet insert_qubit(const DenseKet &rest, int position, const std::array<cplx, 2> &qubit);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const DenseKet &a, const DenseKet &b);
/// <psi| rho |psi> for unit psi.
double fidelity(const DenseDensity &rho, const DenseKet &psi);

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace dicke::dense

#endif  // DICKE_DENSE_ORACLE_HPP
