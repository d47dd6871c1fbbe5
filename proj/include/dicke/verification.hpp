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

#ifndef DICKE_VERIFICATION_HPP
#define DICKE_VERIFICATION_HPP

// Property suite comparing the compact Dicke-basis routines against the dense
// oracle on small qubit counts.

#include <cstdint>
#include <string>
#include <vector>

#include "dicke/measurement.hpp"
#include "dicke/symmetric_state.hpp"

namespace dicke::verify {

struct PropertyResult {
    std::string name;
    int trials = 0;
    /// Largest observed deviation, or for lower-bound properties the smallest observed margin.
    double worst_residual = 0.0;
    double tolerance = 0.0;
    /// Pass means worst_residual > tolerance instead of <= tolerance.
    bool lower_bound = false;
    bool passed = false;
    std::string detail;
};

struct Params {
    int max_n = 8;
    /// Random cases per qubit count.
    int seeds = 50;
    double tolerance = 1e-10;
    std::uint64_t base_seed = 0x5eed;
};

PropertyResult xi_completeness(int max_n);
/// corrupt flips the sign of one coefficient before comparing (negative control).
PropertyResult xi_oracle(const Params &p, bool corrupt = false);
PropertyResult split_reconstruction(const Params &p);
PropertyResult permutation_representation(const Params &p);
PropertyResult basis_characterization_forward(const Params &p);
PropertyResult basis_characterization_reverse(const Params &p);
PropertyResult non_symmetric_rejection(const Params &p);
PropertyResult residual_symmetry(const Params &p);
PropertyResult loss_mechanism_irrelevance(const Params &p);
PropertyResult trace_measure_commutation(const Params &p);
PropertyResult ordering_independence(const Params &p);
PropertyResult mixed_ordering_independence(const Params &p);
PropertyResult loss_independence(const Params &p);
PropertyResult loss_postponement(const Params &p);
PropertyResult pvm_update_formula(const Params &p);
PropertyResult pure_state_sufficiency(const Params &p);
PropertyResult channel_detector_composition(const Params &p);

/// Transcription of the four-term rank-1 update for outcome l of a PVM, unnormalized.
std::vector<cplx> pvm_update_reference(const SymmetricDensity &rho, const SingleQubitPVM &pvm, int label);

struct SuiteOptions {
    Params params;
    int workers = 1;
    bool corrupt_xi = false;
};

/// Runs every property. Throws ResourceLimitError when max_n exceeds the dense cap.
std::vector<PropertyResult> run_suite(const SuiteOptions &options);

}  // namespace dicke::verify

#endif  // DICKE_VERIFICATION_HPP
