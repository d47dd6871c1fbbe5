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

#include "dicke/json_io.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

#include "dicke/errors.hpp"

namespace dicke::io {

namespace {

void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const char *what) {
    if (!j.is_object()) {
        throw ConfigError(std::string(what) + ": expected a JSON object");
    }
    for (const auto &[key, _] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; })) {
            throw ConfigError(std::string(what) + ": unknown field \"" + key + "\"");
        }
    }
}

template <class T>
T get(const json &j, const char *key, const char *what) {
    if (!j.contains(key)) {
        throw ConfigError(std::string(what) + ": missing field \"" + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string(what) + ": field \"" + key + "\" has the wrong type (" + e.what() + ")");
    }
}

template <class T>
T get_or(const json &j, const char *key, T fallback, const char *what) {
    return j.contains(key) ? get<T>(j, key, what) : fallback;
}

std::vector<cplx> complex_array(const json &j, const char *what) {
    if (!j.is_array()) {
        throw ConfigError(std::string(what) + ": expected an array of [re, im] pairs");
    }
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto &z : j) out.push_back(complex_from_json(z));
    return out;
}

json complex_array_json(std::span<const cplx> v) {
    json a = json::array();
    for (const auto &z : v) a.push_back(to_json(z));
    return a;
}

Mat2 mat2_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
        j[1].size() != 2) {
        throw ConfigError("Kraus matrix must be a 2x2 array of [re, im] pairs");
    }
    Mat2 m{};
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) m[r][c] = complex_from_json(j[r][c]);
    }
    return m;
}

json setting_json(const DetectorSetting &s) {
    return json{{"theta", s.theta}, {"phi", s.phi}};
}

DetectorSetting setting_from_json(const json &j) {
    reject_unknown(j, {"theta", "phi"}, "basis");
    return {get_or<double>(j, "theta", 0.0, "basis"), get_or<double>(j, "phi", 0.0, "basis")};
}

}  // namespace

json to_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const SymmetricKet &ket) {
    return json{{"n", ket.n()}, {"amps", complex_array_json(ket.amps())}};
}

SymmetricKet ket_from_json(const json &j) {
    reject_unknown(j, {"n", "amps"}, "ket");
    const int n = get<int>(j, "n", "ket");
    auto amps = complex_array(j.at("amps"), "ket.amps");
    if (amps.size() != static_cast<std::size_t>(n) + 1) {
        throw ConfigError("ket: amps must hold n+1 entries");
    }
    return make_ket(n, std::move(amps));
}

json to_json(const SymmetricDensity &rho) {
    json rows = json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        rows.push_back(complex_array_json(rho.data().subspan(static_cast<std::size_t>(r * rho.dim()),
                                                             static_cast<std::size_t>(rho.dim()))));
    }
    return json{{"n", rho.n()}, {"alpha", std::move(rows)}};
}

SymmetricDensity density_from_json(const json &j) {
    reject_unknown(j, {"n", "alpha"}, "density");
    const int n = get<int>(j, "n", "density");
    const auto &rows = j.at("alpha");
    if (n < 0 || !rows.is_array() || rows.size() != static_cast<std::size_t>(n) + 1) {
        throw ConfigError("density: alpha must hold n+1 rows");
    }
    std::vector<cplx> alpha;
    for (const auto &row : rows) {
        auto r = complex_array(row, "density.alpha");
        if (r.size() != static_cast<std::size_t>(n) + 1) {
            throw ConfigError("density: every alpha row must hold n+1 entries");
        }
        alpha.insert(alpha.end(), r.begin(), r.end());
    }
    return SymmetricDensity::normalized(n, std::move(alpha));
}

CompactState state_from_json(const json &j) {
    if (j.is_object() && j.contains("alpha")) {
        return density_from_json(j);
    }
    return ket_from_json(j);
}

json to_json(const CompactState &state) {
    return std::visit([](const auto &s) { return to_json(s); }, state);
}

MeasurementSpec measurement_from_json(const json &j) {
    const auto type = get<std::string>(j, "type", "measurement");
    if (type == "pvm") {
        reject_unknown(j, {"type", "theta", "phi"}, "measurement");
        return DetectorSetting{get_or<double>(j, "theta", 0.0, "measurement"),
                               get_or<double>(j, "phi", 0.0, "measurement")};
    }
    if (type == "kraus") {
        reject_unknown(j, {"type", "matrices"}, "measurement");
        const auto &ms = j.at("matrices");
        if (!ms.is_array() || ms.empty()) {
            throw ConfigError("measurement: matrices must be a nonempty array");
        }
        KrausSet set;
        int label = 0;
        for (const auto &m : ms) set.push_back({label++, mat2_from_json(m)});
        require_complete(set);
        return set;
    }
    throw ConfigError("measurement: unknown type \"" + type + "\"");
}

json to_json(const MeasurementSpec &m) {
    if (const auto *s = std::get_if<DetectorSetting>(&m)) {
        return json{{"type", "pvm"}, {"theta", s->theta}, {"phi", s->phi}};
    }
    json ms = json::array();
    for (const auto &k : std::get<KrausSet>(m)) {
        json rows = json::array();
        for (const auto &row : k.matrix) rows.push_back(json::array({to_json(row[0]), to_json(row[1])}));
        ms.push_back(std::move(rows));
    }
    return json{{"type", "kraus"}, {"matrices", std::move(ms)}};
}

KrausSet kraus_of(const MeasurementSpec &m) {
    if (const auto *s = std::get_if<DetectorSetting>(&m)) {
        return s->pvm().kraus();
    }
    return std::get<KrausSet>(m);
}

json to_json(const PolicySpec &p) {
    switch (p.kind) {
        case PolicySpec::Kind::Fixed:
            return json{{"type", "fixed"}, {"theta", p.bases.front().theta}, {"phi", p.bases.front().phi}};
        case PolicySpec::Kind::RoundRobin: {
            json bases = json::array();
            for (const auto &b : p.bases) bases.push_back(setting_json(b));
            return json{{"type", "round_robin"}, {"bases", std::move(bases)}};
        }
        case PolicySpec::Kind::Feedback:
            return json{{"type", "feedback"}, {"initial_phase", p.initial_phase}, {"step", p.step}};
    }
    return {};
}

PolicySpec policy_from_json(const json &j) {
    const auto type = get<std::string>(j, "type", "policy");
    PolicySpec p;
    if (type == "fixed") {
        reject_unknown(j, {"type", "theta", "phi"}, "policy");
        p.kind = PolicySpec::Kind::Fixed;
        p.bases = {{get_or<double>(j, "theta", 0.0, "policy"), get_or<double>(j, "phi", 0.0, "policy")}};
    } else if (type == "computational") {
        reject_unknown(j, {"type"}, "policy");
        p.kind = PolicySpec::Kind::Fixed;
        p.bases = {DetectorSetting{}};
    } else if (type == "round_robin") {
        reject_unknown(j, {"type", "bases"}, "policy");
        p.kind = PolicySpec::Kind::RoundRobin;
        const auto &bases = j.at("bases");
        if (!bases.is_array() || bases.empty()) {
            throw ConfigError("policy: round_robin needs a nonempty bases array");
        }
        p.bases.clear();
        for (const auto &b : bases) p.bases.push_back(setting_from_json(b));
    } else if (type == "feedback") {
        reject_unknown(j, {"type", "initial_phase", "step"}, "policy");
        p.kind = PolicySpec::Kind::Feedback;
        p.initial_phase = get_or<double>(j, "initial_phase", 0.0, "policy");
        p.step = get<double>(j, "step", "policy");
    } else {
        throw ConfigError("policy: unknown type \"" + type + "\"");
    }
    return p;
}

json to_json(const InputSpec &in) {
    switch (in.kind) {
        case InputSpec::Kind::Dicke:
            return json{{"type", "dicke"}, {"nu", in.nu}};
        case InputSpec::Kind::Noon:
            return json{{"type", "noon"}};
        case InputSpec::Kind::Product:
            return json{{"type", "product"}, {"theta", in.theta}, {"phi", in.phi}};
        case InputSpec::Kind::Custom:
            return json{{"type", "custom"}, {"amps", complex_array_json(in.amps)}};
    }
    return {};
}

InputSpec input_from_json(const json &j) {
    const auto type = get<std::string>(j, "type", "input");
    InputSpec in;
    if (type == "dicke") {
        reject_unknown(j, {"type", "nu"}, "input");
        in.kind = InputSpec::Kind::Dicke;
        in.nu = get<int>(j, "nu", "input");
    } else if (type == "noon") {
        reject_unknown(j, {"type"}, "input");
        in.kind = InputSpec::Kind::Noon;
    } else if (type == "product") {
        reject_unknown(j, {"type", "theta", "phi"}, "input");
        in.kind = InputSpec::Kind::Product;
        in.theta = get_or<double>(j, "theta", 0.0, "input");
        in.phi = get_or<double>(j, "phi", 0.0, "input");
    } else if (type == "custom") {
        reject_unknown(j, {"type", "amps"}, "input");
        in.kind = InputSpec::Kind::Custom;
        in.amps = complex_array(j.at("amps"), "input.amps");
    } else {
        throw ConfigError("input: unknown type \"" + type + "\"");
    }
    return in;
}

LossSchedule schedule_from_json(const json &j) {
    if (j.is_array()) {
        LossSchedule s;
        for (const auto &e : j) {
            if (e == "measure") {
                s.push_back(EventKind::Measure);
            } else if (e == "lose") {
                s.push_back(EventKind::Lose);
            } else {
                throw ConfigError("schedule: events must be \"measure\" or \"lose\"");
            }
        }
        return s;
    }
    reject_unknown(j, {"events", "loss_rate", "seed"}, "schedule");
    return schedule_from_loss_rate(get<int>(j, "events", "schedule"), get<double>(j, "loss_rate", "schedule"),
                                   get_or<std::uint64_t>(j, "seed", 0, "schedule"));
}

json to_json(const LossSchedule &s) {
    json a = json::array();
    for (const auto e : s) a.push_back(e == EventKind::Measure ? "measure" : "lose");
    return a;
}

ExperimentConfig config_from_json(const json &j) {
    reject_unknown(j, {"input", "n", "phi", "policy", "schedule", "trials", "seed", "estimate"}, "config");
    ExperimentConfig c;
    c.n = get<int>(j, "n", "config");
    if (c.n < 1) {
        throw ConfigError("config: n must be positive");
    }
    if (!j.contains("input")) throw ConfigError("config: missing field \"input\"");
    c.input = input_from_json(j.at("input"));
    c.phi = get_or<double>(j, "phi", 0.0, "config");
    c.policy = j.contains("policy") ? policy_from_json(j.at("policy")) : PolicySpec{};
    c.schedule = j.contains("schedule") ? schedule_from_json(j.at("schedule")) : lossless_schedule(c.n);
    c.trials = get_or<int>(j, "trials", 1, "config");
    c.seed = get_or<std::uint64_t>(j, "seed", 0, "config");
    c.estimate = get_or<bool>(j, "estimate", false, "config");
    if (c.trials < 1) {
        throw ConfigError("config: trials must be at least 1");
    }
    if (static_cast<int>(c.schedule.size()) > c.n) {
        throw ConfigError("config: schedule has more events than qubits");
    }
    return c;
}

json to_json(const ExperimentConfig &c) {
    return json{{"input", to_json(c.input)}, {"n", c.n},           {"phi", c.phi},   {"policy", to_json(c.policy)},
                {"schedule", to_json(c.schedule)}, {"trials", c.trials}, {"seed", c.seed}, {"estimate", c.estimate}};
}

json to_json(const ExperimentTrace &t) {
    json events = json::array();
    for (const auto &e : t.events) {
        json ev{{"step", e.step}, {"kind", e.kind == EventKind::Measure ? "measure" : "lose"}};
        if (e.kind == EventKind::Measure) {
            ev["setting"] = setting_json(*e.setting);
            ev["label"] = e.label;
            ev["probability"] = e.probability;
        }
        events.push_back(std::move(ev));
    }
    return json{{"seed", t.seed}, {"events", std::move(events)}, {"final_state", to_json(t.final_state)},
                {"used_density", t.used_density}};
}

json report_to_json(const EnsembleReport &r, const ExperimentConfig &c) {
    json counts = json::object();
    json freqs = json::object();
    for (const auto &[seq, count] : r.sequence_counts) {
        counts[seq] = count;
        freqs[seq] = static_cast<double>(count) / r.trials;
    }
    const auto total = r.label_counts[0] + r.label_counts[1];
    json out{{"schema_version", kSchemaVersion},
             {"config", to_json(c)},
             {"trials", r.trials},
             {"sequence_counts", std::move(counts)},
             {"sequence_frequencies", std::move(freqs)},
             {"label_counts", {r.label_counts[0], r.label_counts[1]}},
             {"label_frequencies",
              total == 0 ? json::array()
                         : json::array({static_cast<double>(r.label_counts[0]) / static_cast<double>(total),
                                        static_cast<double>(r.label_counts[1]) / static_cast<double>(total)})}};
    if (r.sharpness) {
        out["estimation"] = {{"estimator", "grid_maximum_likelihood"},
                             {"grid_size", kPhaseGridSize},
                             {"mean_estimate", *r.mean_estimate},
                             {"sharpness", *r.sharpness}};
    }
    if (r.trials == 1 && !r.traces.empty()) {
        out["trace"] = to_json(r.traces.front());
    }
    return out;
}

}  // namespace dicke::io
