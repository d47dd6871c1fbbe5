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

#ifndef DICKE_RANDOM_STATES_HPP
#define DICKE_RANDOM_STATES_HPP

#include <vector>

#include "dicke/dense_oracle.hpp"
#include "dicke/measurement.hpp"
#include "dicke/symmetric_state.hpp"

namespace dicke {

/// Complex number with independent standard-normal parts.
cplx random_gaussian(Rng &rng);

/// Haar-random pure state of the symmetric subspace.
SymmetricKet random_ket(int n, Rng &rng);

/// rho = G G^dagger / tr for a Gaussian (n+1) x rank matrix G.
SymmetricDensity random_density(int n, int rank, Rng &rng);

/// Arbitrary orthonormal basis: a random Bloch direction plus random row phases.
SingleQubitPVM random_pvm(Rng &rng);

/// count Kraus operators K_i = A_i S^{-1/2}, S = sum A_i^dagger A_i, A_i Gaussian.
KrausSet random_kraus_set(int count, Rng &rng);

/// Gaussian n-qubit density of the given rank; not symmetric with probability one.
dense::DenseDensity random_dense_density(int n, int rank, Rng &rng);

/// Uniformly random injective map of count events onto positions 1..n.
std::vector<int> random_positions(int n, int count, Rng &rng);

int random_int(int lo, int hi, Rng &rng);

}  // namespace dicke

#endif  // DICKE_RANDOM_STATES_HPP
