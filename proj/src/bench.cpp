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

#include "dicke/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "dicke/dense_oracle.hpp"
#include "dicke/errors.hpp"
#include "dicke/measurement.hpp"
#include "dicke/random_states.hpp"

namespace dicke::bench {

namespace {

using Clock = std::chrono::steady_clock;

template <class Cascade>
CascadeTiming time_cascade(int n, int repetitions, double min_sample_seconds, const char *name, Cascade &&cascade) {
    if (n < 1 || repetitions < 1) {
        throw DomainError("bench: n and repetitions must be positive");
    }
    std::vector<double> samples;
    std::size_t peak = 0;
    for (int r = 0; r < repetitions; ++r) {
        int runs = 0;
        const auto start = Clock::now();
        double elapsed = 0.0;
        do {
            peak = std::max(peak, cascade());
            ++runs;
            elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        } while (elapsed < min_sample_seconds);
        samples.push_back(elapsed / runs);
    }
    std::sort(samples.begin(), samples.end());
    const auto mid = samples.size() / 2;
    const double median = samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
    return {n, name, median, peak, repetitions};
}

}  // namespace

CascadeTiming time_compact_cascade(int n, int repetitions, std::uint64_t seed, double min_sample_seconds) {
    Rng rng(seed);
    const auto input = random_ket(n, rng);
    std::vector<SingleQubitPVM> pvms;
    for (int i = 0; i < n; ++i) pvms.push_back(random_pvm(rng));
    return time_cascade(n, repetitions, min_sample_seconds, "compact", [&] {
        SymmetricKet state = input;
        std::size_t peak = state.amps().size();
        for (const auto &pvm : pvms) {
            const auto outcomes = measure_pure(state, pvm);
            const auto label = sample_outcome<SymmetricKet>(outcomes, rng);
            state = outcomes[static_cast<std::size_t>(label)].conditional_state();
            peak = std::max(peak, state.amps().size());
        }
        return peak;
    });
}

CascadeTiming time_dense_cascade(int n, int repetitions, std::uint64_t seed, double min_sample_seconds) {
    Rng rng(seed);
    const auto input = dense::expand(random_ket(n, rng));
    std::vector<KrausSet> pvms;
    for (int i = 0; i < n; ++i) pvms.push_back(random_pvm(rng).kraus());
    return time_cascade(n, repetitions, min_sample_seconds, "dense", [&] {
        dense::DenseKet state = input;
        for (int i = 0; i < n; ++i) {
            const auto &k = pvms[static_cast<std::size_t>(i)];
            auto b0 = dense::apply_operator_at(state, i + 1, k[0].matrix);
            auto b1 = dense::apply_operator_at(state, i + 1, k[1].matrix);
            double p[2] = {0.0, 0.0};
            for (const auto &a : b0.amps) p[0] += std::norm(a);
            for (const auto &a : b1.amps) p[1] += std::norm(a);
            const auto l = sample_index(p, rng);
            state = std::move(l == 0 ? b0 : b1);
            const double inv = 1.0 / std::sqrt(p[l]);
            for (auto &a : state.amps) a *= inv;
        }
        return state.amps.size();
    });
}

}  // namespace dicke::bench
