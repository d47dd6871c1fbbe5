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

#ifndef DICKE_JSON_IO_HPP
#define DICKE_JSON_IO_HPP

// JSON encodings shared by the CLI and the tests. Complex numbers are [re, im]
// pairs. Every decoder rejects unknown fields with ConfigError.

#include <variant>

#include "json.hpp"

#include "dicke/harness.hpp"
#include "dicke/measurement.hpp"
#include "dicke/symmetric_state.hpp"

namespace dicke::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(cplx z);
cplx complex_from_json(const json &j);

/// {"n": int, "amps": [[re, im], ...]}
json to_json(const SymmetricKet &ket);
SymmetricKet ket_from_json(const json &j);

/// {"n": int, "alpha": [[[re, im], ...], ...]} (rows)
json to_json(const SymmetricDensity &rho);
SymmetricDensity density_from_json(const json &j);

/// Either a ket or a density, distinguished by the "amps" / "alpha" field.
CompactState state_from_json(const json &j);
json to_json(const CompactState &state);

/// {"type": "pvm", "theta": ..., "phi": ...} or {"type": "kraus", "matrices": [2x2 complex, ...]}.
using MeasurementSpec = std::variant<DetectorSetting, KrausSet>;
MeasurementSpec measurement_from_json(const json &j);
json to_json(const MeasurementSpec &m);
KrausSet kraus_of(const MeasurementSpec &m);

json to_json(const PolicySpec &p);
PolicySpec policy_from_json(const json &j);

json to_json(const InputSpec &in);
InputSpec input_from_json(const json &j);

/// Array of "measure"/"lose" strings, or {"events": int, "loss_rate": r, "seed": s}.
LossSchedule schedule_from_json(const json &j);
json to_json(const LossSchedule &s);

/// {"input": {...}, "n": int, "phi": float, "policy": {...}, "schedule": [...],
///  "trials": int, "seed": int, "estimate": bool}. Missing schedule means n measurements.
ExperimentConfig config_from_json(const json &j);
json to_json(const ExperimentConfig &c);

json to_json(const ExperimentTrace &t);
json report_to_json(const EnsembleReport &r, const ExperimentConfig &c);

}  // namespace dicke::io

#endif  // DICKE_JSON_IO_HPP
