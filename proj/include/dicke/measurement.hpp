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

#ifndef DICKE_MEASUREMENT_HPP
#define DICKE_MEASUREMENT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dicke/symmetric_state.hpp"

namespace dicke {

/// 2x2 complex matrix acting on one qubit, rows/columns indexed by |0>, |1>.
using Mat2 = std::array<std::array<cplx, 2>, 2>;

Mat2 identity2();
Mat2 adjoint(const Mat2 &m);
Mat2 operator*(const Mat2 &a, const Mat2 &b);

/// Outcomes with probability below this carry no conditional state.
inline constexpr double kZeroProbability = 1e-14;

/// Completeness tolerance for sum_l K_l^dagger K_l = I.
inline constexpr double kCompletenessTolerance = 1e-10;

struct SingleQubitKraus {
    int label;
    Mat2 matrix;
};

using KrausSet = std::vector<SingleQubitKraus>;

/// Throws InvalidMeasurementError unless sum_l K_l^dagger K_l = I within
/// kCompletenessTolerance (max-entry norm).
void require_complete(std::span<const SingleQubitKraus> kraus);

/// Rank-1 single-qubit projective measurement in the orthonormal basis
/// {|0'>, |1'>}, stored as overlaps kappa[l][b] = <l'|b>.
class SingleQubitPVM {
   public:
    /// Throws InvalidMeasurementError unless kappa * kappa^dagger = I within 1e-12.
    explicit SingleQubitPVM(const Mat2 &kappa);

    const Mat2 &kappa() const noexcept {
        return kappa_;
    }
    /// <b|l'>, the components of the basis vector for outcome l.
    std::array<cplx, 2> basis_vector(int label) const;
    /// {K_0, K_1} with K_l = |l'><l'|.
    KrausSet kraus() const;

   private:
    Mat2 kappa_;
};

/// |0'> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, |1'> its orthogonal complement.
SingleQubitPVM pvm_from_bloch(double theta, double phi);

SingleQubitPVM computational_pvm();

template <class State>
struct MeasurementOutcome {
    int label;
    double probability;
    /// State of the n-1 unmeasured qubits; empty when probability < kZeroProbability.
    std::optional<State> post_state;

    /// Throws ZeroProbabilityError when there is no conditional state.
    const State &conditional_state() const;
};

using PureOutcome = MeasurementOutcome<SymmetricKet>;
using MixedOutcome = MeasurementOutcome<SymmetricDensity>;

/// Measures one qubit of a pure symmetric state. Outcome l has unnormalized
/// post-state amplitudes (sqrt(n-nu) psi_nu kappa[l][0] + sqrt(nu+1) psi_{nu+1} kappa[l][1]) / sqrt(n).
std::array<PureOutcome, 2> measure_pure(const SymmetricKet &ket, const SingleQubitPVM &pvm);

/// Measures one qubit of a mixed symmetric state with an arbitrary complete set of
/// single-qubit Kraus operators. The state of the remaining n-1 qubits depends on K_l
/// only through E_l = K_l^dagger K_l; for rank-1 projectors this is the familiar
/// four-term update in the kappa overlaps.
std::vector<MixedOutcome> measure_mixed(const SymmetricDensity &rho, std::span<const SingleQubitKraus> kraus);

std::vector<MixedOutcome> measure_mixed(const SymmetricDensity &rho, const SingleQubitPVM &pvm);

/// Partial trace over one qubit.
SymmetricDensity lose_qubit(const SymmetricDensity &rho);

SymmetricDensity lose_qubit_pure(const SymmetricKet &ket);

/// Random stream owned by one trial.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the value
/// sequence depends only on the engine, not on the standard library's distributions.
double uniform01(Rng &rng);

/// Draws an index with the given probabilities (which need not be normalized
/// exactly). Zero-probability entries are never returned.
std::size_t sample_index(std::span<const double> probabilities, Rng &rng);

template <class State>
int sample_outcome(std::span<const MeasurementOutcome<State>> outcomes, Rng &rng) {
    std::vector<double> p;
    p.reserve(outcomes.size());
    for (const auto &o : outcomes) {
        p.push_back(o.post_state ? o.probability : 0.0);
    }
    return outcomes[sample_index(p, rng)].label;
}

}  // namespace dicke

#endif  // DICKE_MEASUREMENT_HPP
