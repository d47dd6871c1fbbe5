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

#ifndef DICKE_BENCH_HPP
#define DICKE_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <string>

namespace dicke::bench {

struct CascadeTiming {
    int n = 0;
    std::string representation;  // "compact" or "dense"
    /// Median over repetitions of the wall time of one full cascade.
    double median_seconds = 0.0;
    /// Largest number of complex amplitudes held by the evolving state.
    std::size_t peak_state_entries = 0;
    int repetitions = 0;
};

/// Times a cascade of n sequential random PVMs on a random pure symmetric state.
/// Each repetition repeats the cascade until at least min_sample_seconds elapsed.
CascadeTiming time_compact_cascade(int n, int repetitions, std::uint64_t seed, double min_sample_seconds = 0.01);

/// Same cascade on the full 2^n state vector (n limited by the dense ket cap).
CascadeTiming time_dense_cascade(int n, int repetitions, std::uint64_t seed, double min_sample_seconds = 0.01);

}  // namespace dicke::bench

#endif  // DICKE_BENCH_HPP
