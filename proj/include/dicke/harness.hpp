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

#ifndef DICKE_HARNESS_HPP
#define DICKE_HARNESS_HPP

// Sequential adaptive-measurement experiment: the qubits of a symmetric input
// state pass one at a time through a phase channel and a detector whose basis is
// chosen by a policy, with losses interleaved according to a schedule.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dicke/measurement.hpp"
#include "dicke/symmetric_state.hpp"

namespace dicke {

/// Unitary single-qubit channel diag(1, e^{i phi}).
struct PhaseChannel {
    double phi = 0.0;
    Mat2 unitary() const;
};

/// PVM equivalent to applying the channel and then measuring with the detector:
/// kappa'[l][b] = sum_c kappa[l][c] U[c][b].
SingleQubitPVM combined_pvm(const PhaseChannel &channel, const SingleQubitPVM &detector);

/// Detector basis on the Bloch sphere; see pvm_from_bloch.
struct DetectorSetting {
    double theta = 0.0;
    double phi = 0.0;

    SingleQubitPVM pvm() const {
        return pvm_from_bloch(theta, phi);
    }
    friend bool operator==(const DetectorSetting &, const DetectorSetting &) = default;
};

struct MeasurementRecord {
    DetectorSetting setting;
    int label;
};

/// Chooses the next detector setting from the measurements made so far. Must be a
/// deterministic function of the history; implementations hold no mutable state,
/// so one instance can serve concurrent trials.
class Policy {
   public:
    virtual ~Policy() = default;
    virtual DetectorSetting next(std::span<const MeasurementRecord> history) const = 0;
    /// True when the policy estimates the channel phase (the ensemble then reports sharpness).
    virtual bool estimates_phase() const {
        return false;
    }
};

class FixedBasisPolicy final : public Policy {
   public:
    explicit FixedBasisPolicy(DetectorSetting setting) : setting_(setting) {
    }
    DetectorSetting next(std::span<const MeasurementRecord>) const override {
        return setting_;
    }

   private:
    DetectorSetting setting_;
};

class RoundRobinPolicy final : public Policy {
   public:
    /// Throws DomainError on an empty list.
    explicit RoundRobinPolicy(std::vector<DetectorSetting> bases);
    DetectorSetting next(std::span<const MeasurementRecord> history) const override;

   private:
    std::vector<DetectorSetting> bases_;
};

/// Equatorial detector whose phase moves by +step/m after outcome 1 and -step/m
/// after outcome 0, m being the number of measurements made so far.
class FeedbackPolicy final : public Policy {
   public:
    FeedbackPolicy(double initial_phase, double step) : initial_phase_(initial_phase), step_(step) {
    }
    DetectorSetting next(std::span<const MeasurementRecord> history) const override;
    bool estimates_phase() const override {
        return true;
    }

   private:
    double initial_phase_;
    double step_;
};

struct PolicySpec {
    enum class Kind { Fixed, RoundRobin, Feedback };
    Kind kind = Kind::Fixed;
    std::vector<DetectorSetting> bases{DetectorSetting{}};  // Fixed uses bases[0]
    double initial_phase = 0.0;
    double step = 0.0;
};

std::unique_ptr<Policy> make_policy(const PolicySpec &spec);

enum class EventKind { Measure, Lose };

/// Time-ordered events, each consuming one fresh qubit.
using LossSchedule = std::vector<EventKind>;

/// n_events events; each is a loss with probability loss_rate, drawn from a stream seeded with seed.
LossSchedule schedule_from_loss_rate(int n_events, double loss_rate, std::uint64_t seed);

LossSchedule lossless_schedule(int n_events);

using CompactState = std::variant<SymmetricKet, SymmetricDensity>;

struct TraceEvent {
    int step;
    EventKind kind;
    std::optional<DetectorSetting> setting;
    int label = -1;
    double probability = 1.0;
};

struct ExperimentTrace {
    std::uint64_t seed = 0;
    std::vector<TraceEvent> events;
    CompactState final_state;
    /// Set once a loss forced the mixed-state representation.
    bool used_density = false;

    std::vector<int> labels() const;
    std::vector<MeasurementRecord> measurements() const;
};

ExperimentTrace run_trial(const SymmetricKet &input, const PhaseChannel &channel, const Policy &policy,
                          const LossSchedule &schedule, std::uint64_t seed);

/// Same as run_trial but with the outcome of every measurement prescribed; the
/// trace records the probability of each prescribed outcome. Throws
/// ZeroProbabilityError when a prescribed outcome is impossible.
ExperimentTrace replay_trial(const SymmetricKet &input, const PhaseChannel &channel, const Policy &policy,
                             const LossSchedule &schedule, std::span<const int> labels);

/// Number of candidate phases in the maximum-likelihood grid.
inline constexpr int kPhaseGridSize = 1 << 10;

/// Grid maximum-likelihood estimate of the channel phase given a trace's outcomes.
double estimate_phase(const SymmetricKet &input, const Policy &policy, const LossSchedule &schedule,
                      std::span<const int> labels);

struct InputSpec {
    enum class Kind { Dicke, Noon, Product, Custom };
    Kind kind = Kind::Dicke;
    int nu = 0;
    double theta = 0.0;
    double phi = 0.0;
    std::vector<cplx> amps;
};

SymmetricKet make_input(const InputSpec &spec, int n);

struct ExperimentConfig {
    InputSpec input;
    int n = 1;
    double phi = 0.0;
    PolicySpec policy;
    LossSchedule schedule;
    int trials = 1;
    std::uint64_t seed = 0;
    bool estimate = false;
};

struct EnsembleReport {
    int trials = 0;
    std::map<std::string, int> sequence_counts;
    std::array<std::int64_t, 2> label_counts{};
    /// Present when estimation was requested or the policy estimates the phase.
    std::optional<double> mean_estimate;
    std::optional<double> sharpness;
    std::vector<ExperimentTrace> traces;
};

/// Trial i runs with seed config.seed + i. Results are independent of the worker count.
/// Traces are kept when keep_traces is set or there is a single trial.
EnsembleReport run_ensemble(const ExperimentConfig &config, int workers = 1, bool keep_traces = false);

}  // namespace dicke

#endif  // DICKE_HARNESS_HPP
