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

#include "dicke/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "dicke/errors.hpp"

namespace dicke {

Mat2 PhaseChannel::unitary() const {
    return Mat2{{{1.0, 0.0}, {0.0, std::polar(1.0, phi)}}};
}

SingleQubitPVM combined_pvm(const PhaseChannel &channel, const SingleQubitPVM &detector) {
    return SingleQubitPVM(detector.kappa() * channel.unitary());
}

RoundRobinPolicy::RoundRobinPolicy(std::vector<DetectorSetting> bases) : bases_(std::move(bases)) {
    if (bases_.empty()) {
        throw DomainError("RoundRobinPolicy: basis list is empty");
    }
}

DetectorSetting RoundRobinPolicy::next(std::span<const MeasurementRecord> history) const {
    return bases_[history.size() % bases_.size()];
}

DetectorSetting FeedbackPolicy::next(std::span<const MeasurementRecord> history) const {
    if (history.empty()) {
        return {std::numbers::pi / 2, initial_phase_};
    }
    const double m = static_cast<double>(history.size());
    const auto &last = history.back();
    const double sign = last.label == 1 ? 1.0 : -1.0;
    return {std::numbers::pi / 2, last.setting.phi + sign * step_ / m};
}

std::unique_ptr<Policy> make_policy(const PolicySpec &spec) {
    switch (spec.kind) {
        case PolicySpec::Kind::Fixed:
            if (spec.bases.empty()) {
                throw DomainError("fixed policy needs a basis");
            }
            return std::make_unique<FixedBasisPolicy>(spec.bases.front());
        case PolicySpec::Kind::RoundRobin:
            return std::make_unique<RoundRobinPolicy>(spec.bases);
        case PolicySpec::Kind::Feedback:
            return std::make_unique<FeedbackPolicy>(spec.initial_phase, spec.step);
    }
    throw DomainError("unknown policy kind");
}

LossSchedule schedule_from_loss_rate(int n_events, double loss_rate, std::uint64_t seed) {
    if (n_events < 0 || !(loss_rate >= 0.0 && loss_rate <= 1.0)) {
        throw DomainError("schedule_from_loss_rate: need n_events >= 0 and loss_rate in [0,1]");
    }
    Rng rng(seed);
    LossSchedule s;
    s.reserve(static_cast<std::size_t>(n_events));
    for (int i = 0; i < n_events; ++i) {
        s.push_back(uniform01(rng) < loss_rate ? EventKind::Lose : EventKind::Measure);
    }
    return s;
}

LossSchedule lossless_schedule(int n_events) {
    return LossSchedule(static_cast<std::size_t>(std::max(n_events, 0)), EventKind::Measure);
}

std::vector<int> ExperimentTrace::labels() const {
    std::vector<int> out;
    for (const auto &e : events) {
        if (e.kind == EventKind::Measure) out.push_back(e.label);
    }
    return out;
}

std::vector<MeasurementRecord> ExperimentTrace::measurements() const {
    std::vector<MeasurementRecord> out;
    for (const auto &e : events) {
        if (e.kind == EventKind::Measure) out.push_back({*e.setting, e.label});
    }
    return out;
}

namespace {

template <class Outcomes>
std::vector<double> probabilities_of(const Outcomes &outcomes) {
    std::vector<double> p;
    for (const auto &o : outcomes) p.push_back(o.probability);
    return p;
}

// Runs the schedule; choose(outcomes, measurement_index) returns the index of the
// realized outcome.
template <class Choose>
ExperimentTrace execute(const SymmetricKet &input, const PhaseChannel &channel, const Policy &policy,
                        const LossSchedule &schedule, Choose &&choose) {
    if (static_cast<int>(schedule.size()) > input.n()) {
        throw DomainError("schedule has " + std::to_string(schedule.size()) + " events but the input holds only " +
                          std::to_string(input.n()) + " qubits");
    }
    ExperimentTrace trace{0, {}, input, false};
    trace.events.reserve(schedule.size());
    std::vector<MeasurementRecord> history;
    CompactState state = input;
    int step = 0;
    for (const auto kind : schedule) {
        if (kind == EventKind::Lose) {
            state = std::visit(
                [](const auto &s) -> CompactState {
                    if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SymmetricKet>) {
                        return lose_qubit_pure(s);
                    } else {
                        return lose_qubit(s);
                    }
                },
                state);
            trace.used_density = true;
            trace.events.push_back({step++, kind, std::nullopt, -1, 1.0});
            continue;
        }
        const DetectorSetting setting = policy.next(history);
        const SingleQubitPVM pvm = combined_pvm(channel, setting.pvm());
        const auto m = history.size();
        TraceEvent ev{step++, kind, setting, -1, 0.0};
        if (const auto *ket = std::get_if<SymmetricKet>(&state)) {
            const auto outcomes = measure_pure(*ket, pvm);
            const auto idx = choose(probabilities_of(outcomes), m);
            const auto &o = outcomes[idx];
            ev.label = o.label;
            ev.probability = o.probability;
            state = o.conditional_state();
        } else {
            const auto outcomes = measure_mixed(std::get<SymmetricDensity>(state), pvm);
            const auto idx = choose(probabilities_of(outcomes), m);
            const auto &o = outcomes[idx];
            ev.label = o.label;
            ev.probability = o.probability;
            state = o.conditional_state();
        }
        history.push_back({setting, ev.label});
        trace.events.push_back(ev);
    }
    trace.final_state = std::move(state);
    return trace;
}

}  // namespace

ExperimentTrace run_trial(const SymmetricKet &input, const PhaseChannel &channel, const Policy &policy,
                          const LossSchedule &schedule, std::uint64_t seed) {
    Rng rng(seed);
    auto trace = execute(input, channel, policy, schedule, [&rng](const std::vector<double> &p, std::size_t) {
        std::vector<double> usable(p);
        for (auto &x : usable) {
            if (x < kZeroProbability) x = 0.0;
        }
        return sample_index(usable, rng);
    });
    trace.seed = seed;
    return trace;
}

ExperimentTrace replay_trial(const SymmetricKet &input, const PhaseChannel &channel, const Policy &policy,
                             const LossSchedule &schedule, std::span<const int> labels) {
    const auto measures = std::count(schedule.begin(), schedule.end(), EventKind::Measure);
    if (static_cast<std::size_t>(measures) != labels.size()) {
        throw DomainError("replay_trial: " + std::to_string(labels.size()) + " labels for " +
                          std::to_string(measures) + " measurements");
    }
    return execute(input, channel, policy, schedule, [labels](const std::vector<double> &p, std::size_t m) {
        const int l = labels[m];
        if (l < 0 || static_cast<std::size_t>(l) >= p.size()) {
            throw DomainError("replay_trial: label " + std::to_string(l) + " is not an outcome");
        }
        return static_cast<std::size_t>(l);
    });
}

double estimate_phase(const SymmetricKet &input, const Policy &policy, const LossSchedule &schedule,
                      std::span<const int> labels) {
    // Outcome probabilities do not depend on which unmeasured qubits were lost, so
    // the likelihood is evaluated on the lossless schedule with the same measurements.
    const auto measures = std::count(schedule.begin(), schedule.end(), EventKind::Measure);
    const auto lossless = lossless_schedule(static_cast<int>(measures));
    double best_phase = 0.0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kPhaseGridSize; ++j) {
        const double candidate = 2.0 * std::numbers::pi * j / kPhaseGridSize;
        double ll = 0.0;
        try {
            const auto t = replay_trial(input, PhaseChannel{candidate}, policy, lossless, labels);
            for (const auto &e : t.events) ll += std::log(e.probability);
        } catch (const ZeroProbabilityError &) {
            continue;
        }
        if (ll > best_ll) {
            best_ll = ll;
            best_phase = candidate;
        }
    }
    return best_phase;
}

SymmetricKet make_input(const InputSpec &spec, int n) {
    switch (spec.kind) {
        case InputSpec::Kind::Dicke:
            return basis_state(n, spec.nu);
        case InputSpec::Kind::Noon:
            return noon_state(n);
        case InputSpec::Kind::Product:
            return product_state(n, spec.theta, spec.phi);
        case InputSpec::Kind::Custom:
            return make_ket(n, spec.amps);
    }
    throw DomainError("unknown input kind");
}

EnsembleReport run_ensemble(const ExperimentConfig &config, int workers, bool keep_traces) {
    if (config.trials < 1) {
        throw DomainError("run_ensemble: trial count must be at least 1");
    }
    const SymmetricKet input = make_input(config.input, config.n);
    const auto policy = make_policy(config.policy);
    const PhaseChannel channel{config.phi};
    const bool estimate = config.estimate || policy->estimates_phase();

    struct TrialResult {
        ExperimentTrace trace;
        double estimate = 0.0;
    };
    const auto trials = static_cast<std::size_t>(config.trials);
    std::vector<std::optional<TrialResult>> results(trials);
    // First failure per worker, rethrown after the pool joins.
    std::vector<std::exception_ptr> errors;
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < trials && !errors[first]; i += stride) {
            try {
                TrialResult r{run_trial(input, channel, *policy, config.schedule, config.seed + i), 0.0};
                if (estimate) {
                    r.estimate = estimate_phase(input, *policy, config.schedule, r.trace.labels());
                }
                results[i] = std::move(r);
            } catch (...) {
                errors[first] = std::current_exception();
            }
        }
    };
    const auto n_workers = static_cast<std::size_t>(std::clamp(workers, 1, config.trials));
    errors.resize(n_workers);
    if (n_workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back(work, w, n_workers);
        }
    }
    for (const auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }

    EnsembleReport report;
    report.trials = config.trials;
    cplx phasor_estimate{};
    cplx phasor_error{};
    for (auto &r : results) {
        std::string key;
        for (const int l : r->trace.labels()) {
            key.push_back(static_cast<char>('0' + l));
            ++report.label_counts[static_cast<std::size_t>(l)];
        }
        ++report.sequence_counts[key];
        if (estimate) {
            phasor_estimate += std::polar(1.0, r->estimate);
            phasor_error += std::polar(1.0, r->estimate - config.phi);
        }
        if (keep_traces || trials == 1) {
            report.traces.push_back(std::move(r->trace));
        }
    }
    if (estimate) {
        const double t = static_cast<double>(trials);
        report.mean_estimate = std::arg(phasor_estimate / t);
        report.sharpness = std::abs(phasor_error / t);
    }
    return report;
}

}  // namespace dicke
