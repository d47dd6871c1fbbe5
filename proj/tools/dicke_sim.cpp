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

// Command-line front end: split, measure, simulate, verify, bench.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dicke/bench.hpp"
#include "dicke/dense_oracle.hpp"
#include "dicke/errors.hpp"
#include "dicke/harness.hpp"
#include "dicke/json_io.hpp"
#include "dicke/measurement.hpp"
#include "dicke/symmetric_state.hpp"
#include "dicke/verification.hpp"

namespace {

using dicke::io::json;

enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kConfigError = 2,
    kDomainError = 3,
    kVerificationFailed = 4,
    kResourceLimit = 5,
};

struct Output {
    std::string path;
    std::string format;

    void write(const std::string &text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw dicke::ConfigError("cannot open output file " + path);
        }
        out << text;
    }
};

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> parse_numbers(const std::string &csv, const std::string &what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw dicke::ConfigError(what + ": cannot parse number \"" + item + "\"");
        }
    }
    return out;
}

int as_int(double x, const std::string &what) {
    if (x != std::floor(x)) {
        throw dicke::ConfigError(what + ": expected an integer, got " + fmt17(x));
    }
    return static_cast<int>(x);
}

json load_json(const std::string &text_or_path) {
    std::string text = text_or_path;
    if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1));
        if (!in) {
            throw dicke::ConfigError("cannot read " + text.substr(1));
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw dicke::ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

// dicke:n,nu | noon:n | product:n,theta,phi | @file.json | inline JSON
dicke::CompactState parse_state(const std::string &spec) {
    if (!spec.empty() && (spec.front() == '@' || spec.front() == '{')) {
        return dicke::io::state_from_json(load_json(spec));
    }
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const auto args = colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1), "--state");
    if (kind == "dicke" && args.size() == 2) {
        return dicke::basis_state(as_int(args[0], "--state"), as_int(args[1], "--state"));
    }
    if (kind == "noon" && args.size() == 1) {
        return dicke::noon_state(as_int(args[0], "--state"));
    }
    if (kind == "product" && args.size() == 3) {
        return dicke::product_state(as_int(args[0], "--state"), args[1], args[2]);
    }
    throw dicke::ConfigError("--state: expected dicke:n,nu | noon:n | product:n,theta,phi | @file.json | JSON, got \"" +
                             spec + "\"");
}

// computational | hadamard | bloch:theta,phi | @file.json | inline JSON
dicke::io::MeasurementSpec parse_measurement(const std::string &spec) {
    if (!spec.empty() && (spec.front() == '@' || spec.front() == '{')) {
        return dicke::io::measurement_from_json(load_json(spec));
    }
    if (spec == "computational") {
        return dicke::DetectorSetting{0.0, 0.0};
    }
    if (spec == "hadamard") {
        return dicke::DetectorSetting{std::numbers::pi / 2, 0.0};
    }
    if (spec.rfind("bloch:", 0) == 0) {
        const auto v = parse_numbers(spec.substr(6), "--pvm");
        if (v.size() == 2) {
            return dicke::DetectorSetting{v[0], v[1]};
        }
    }
    throw dicke::ConfigError("--pvm: expected computational | hadamard | bloch:theta,phi | @file.json | JSON, got \"" +
                             spec + "\"");
}

int cmd_split(int n, int nu, int k, const Output &out) {
    const auto rows = dicke::general_split(n, nu, k);
    double sum = 0.0;
    for (const auto &r : rows) sum += r.value * r.value;
    if (out.format == "csv") {
        std::string text = "schema_version,mu,xi\n";
        for (const auto &r : rows) {
            text += std::to_string(dicke::io::kSchemaVersion) + "," + std::to_string(r.mu) + "," + fmt17(r.value) + "\n";
        }
        out.write(text);
        std::cerr << "sum of squares " << fmt17(sum) << ", deviation from 1: " << fmt17(sum - 1.0) << "\n";
        return kOk;
    }
    json j{{"schema_version", dicke::io::kSchemaVersion}, {"n", n}, {"nu", nu}, {"k", k}};
    j["rows"] = json::array();
    for (const auto &r : rows) j["rows"].push_back({{"mu", r.mu}, {"xi", r.value}});
    j["sum_of_squares"] = sum;
    j["deviation"] = sum - 1.0;
    out.write(dump(j));
    return kOk;
}

template <class Outcomes>
json outcomes_json(const Outcomes &outcomes) {
    json arr = json::array();
    for (const auto &o : outcomes) {
        json e{{"label", o.label}, {"probability", o.probability}};
        e["post_state"] = o.post_state ? dicke::io::to_json(*o.post_state) : json(nullptr);
        arr.push_back(std::move(e));
    }
    return arr;
}

int cmd_measure(const std::string &state_spec, const std::string &pvm_spec, const Output &out) {
    const auto state = parse_state(state_spec);
    const auto m = parse_measurement(pvm_spec);
    json outcomes;
    const auto *ket = std::get_if<dicke::SymmetricKet>(&state);
    const auto *setting = std::get_if<dicke::DetectorSetting>(&m);
    if (ket && setting) {
        outcomes = outcomes_json(dicke::measure_pure(*ket, setting->pvm()));
    } else {
        const auto rho = ket ? dicke::to_density(*ket) : std::get<dicke::SymmetricDensity>(state);
        outcomes = outcomes_json(dicke::measure_mixed(rho, dicke::io::kraus_of(m)));
    }
    if (out.format == "csv") {
        std::string text = "schema_version,label,probability\n";
        for (const auto &o : outcomes) {
            text += std::to_string(dicke::io::kSchemaVersion) + "," + std::to_string(o["label"].get<int>()) + "," +
                    fmt17(o["probability"].get<double>()) + "\n";
        }
        out.write(text);
        return kOk;
    }
    out.write(dump(json{{"schema_version", dicke::io::kSchemaVersion},
                        {"state", dicke::io::to_json(state)},
                        {"measurement", dicke::io::to_json(m)},
                        {"outcomes", std::move(outcomes)}}));
    return kOk;
}

int cmd_simulate(const std::string &config_path, const std::string &traces_path, int workers,
                 const std::vector<std::uint64_t> &seed_override, const Output &out) {
    auto config = dicke::io::config_from_json(load_json("@" + config_path));
    if (!seed_override.empty()) {
        config.seed = seed_override.front();
    }
    const bool keep = !traces_path.empty();
    const auto report = dicke::run_ensemble(config, workers, keep);
    if (keep) {
        std::ofstream tr(traces_path, std::ios::binary);
        if (!tr) {
            throw dicke::ConfigError("cannot open trace file " + traces_path);
        }
        for (const auto &t : report.traces) tr << dicke::io::to_json(t).dump() << "\n";
    }
    const auto j = dicke::io::report_to_json(report, config);
    if (out.format == "csv") {
        std::string text = "schema_version,sequence,count,frequency\n";
        for (const auto &[seq, count] : report.sequence_counts) {
            text += std::to_string(dicke::io::kSchemaVersion) + "," + (seq.empty() ? "-" : seq) + "," +
                    std::to_string(count) + "," + fmt17(static_cast<double>(count) / report.trials) + "\n";
        }
        out.write(text);
        return kOk;
    }
    out.write(dump(j));
    return kOk;
}

int cmd_verify(int max_n, int seeds, double tolerance, int workers, bool corrupt_xi, const Output &out) {
    dicke::verify::SuiteOptions options;
    options.params.max_n = max_n;
    options.params.seeds = seeds;
    options.params.tolerance = tolerance;
    options.workers = workers;
    options.corrupt_xi = corrupt_xi;
    const auto results = dicke::verify::run_suite(options);
    bool all = true;
    json props = json::array();
    std::string csv = "schema_version,property,trials,worst_residual,tolerance,passed\n";
    for (const auto &r : results) {
        all = all && r.passed;
        props.push_back({{"name", r.name},
                         {"trials", r.trials},
                         {"worst_residual", r.worst_residual},
                         {"tolerance", r.tolerance},
                         {"bound", r.lower_bound ? "lower" : "upper"},
                         {"passed", r.passed},
                         {"detail", r.detail}});
        csv += std::to_string(dicke::io::kSchemaVersion) + "," + r.name + "," + std::to_string(r.trials) + "," +
               fmt17(r.worst_residual) + "," + fmt17(r.tolerance) + "," + (r.passed ? "true" : "false") + "\n";
        if (!r.passed) {
            std::cerr << "FAILED " << r.name << ": worst residual " << fmt17(r.worst_residual) << " vs tolerance "
                      << fmt17(r.tolerance) << "\n";
        }
    }
    if (out.format == "csv") {
        out.write(csv);
    } else {
        out.write(dump(json{{"schema_version", dicke::io::kSchemaVersion},
                            {"max_n", max_n},
                            {"seeds", seeds},
                            {"tolerance", tolerance},
                            {"all_passed", all},
                            {"properties", std::move(props)}}));
    }
    return all ? kOk : kVerificationFailed;
}

int cmd_bench(const std::vector<int> &sizes, int repetitions, int dense_max, std::uint64_t seed, const Output &out) {
    std::vector<dicke::bench::CascadeTiming> rows;
    const int cap = std::min(dense_max, dicke::dense::dense_cap().ket);
    for (const int n : sizes) {
        rows.push_back(dicke::bench::time_compact_cascade(n, repetitions, seed));
        if (n <= cap) {
            rows.push_back(dicke::bench::time_dense_cascade(n, repetitions, seed));
        }
    }
    if (out.format == "json") {
        json arr = json::array();
        for (const auto &r : rows) {
            arr.push_back({{"n", r.n},
                           {"representation", r.representation},
                           {"median_seconds", r.median_seconds},
                           {"peak_state_entries", r.peak_state_entries},
                           {"repetitions", r.repetitions}});
        }
        out.write(dump(json{{"schema_version", dicke::io::kSchemaVersion}, {"rows", std::move(arr)}}));
        return kOk;
    }
    std::string text = "schema_version,n,representation,median_seconds,peak_state_entries,repetitions\n";
    for (const auto &r : rows) {
        text += std::to_string(dicke::io::kSchemaVersion) + "," + std::to_string(r.n) + "," + r.representation + "," +
                fmt17(r.median_seconds) + "," + std::to_string(r.peak_state_entries) + "," +
                std::to_string(r.repetitions) + "\n";
    }
    out.write(text);
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulation of sequential single-qubit measurements on permutationally-symmetric qubit strings"};
    app.require_subcommand(1);

    Output out;
    auto add_output = [&out](CLI::App *sub) {
        sub->add_option("--out", out.path, "Output path (default: stdout)");
        sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    int n = 0, nu = 0, k = 0;
    auto *split = app.add_subcommand("split", "Coefficients of |nu>_n split into n-k and k qubits");
    split->add_option("--n", n, "Qubit count")->required();
    split->add_option("--nu", nu, "Hamming weight")->required();
    split->add_option("--k", k, "Size of the split-off block")->required();

    std::string state_spec, pvm_spec = "computational";
    auto *measure = app.add_subcommand("measure", "Measure one qubit of a symmetric state");
    measure->add_option("--state", state_spec, "dicke:n,nu | noon:n | product:n,theta,phi | @file.json | JSON")
        ->required();
    measure->add_option("--pvm", pvm_spec, "computational | hadamard | bloch:theta,phi | @file.json | JSON");

    std::string config_path, traces_path;
    int workers = 1;
    std::vector<std::uint64_t> seed;
    auto *simulate = app.add_subcommand("simulate", "Run an adaptive-measurement ensemble");
    simulate->add_option("--config", config_path, "Experiment configuration (JSON)")->required();
    simulate->add_option("--traces", traces_path, "Write per-trial traces as JSON lines");
    simulate->add_option("--workers", workers, "Parallel trials")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "Override the configured base seed")->expected(1);

    int max_n = 8, seeds = 50;
    double tolerance = 1e-10;
    bool corrupt_xi = false;
    auto *verify = app.add_subcommand("verify", "Run the dense-oracle property suite");
    verify->add_option("--max-n", max_n, "Largest qubit count checked");
    verify->add_option("--seeds", seeds, "Random cases per qubit count");
    verify->add_option("--tolerance", tolerance, "Residual tolerance");
    verify->add_option("--workers", workers, "Parallel properties")->check(CLI::PositiveNumber);
    verify->add_flag("--corrupt-xi-for-testing", corrupt_xi, "Negative control: flip one split coefficient");

    std::vector<int> sizes{512, 1024, 2048};
    int repetitions = 5, dense_max = 12;
    std::uint64_t bench_seed = 1;
    auto *bench = app.add_subcommand("bench", "Time full measurement cascades");
    bench->add_option("--sizes", sizes, "Qubit counts")->delimiter(',');
    bench->add_option("--repetitions", repetitions, "Timed repetitions per size (median reported)");
    bench->add_option("--dense-max", dense_max, "Largest n also timed on the dense state vector");
    bench->add_option("--seed", bench_seed, "Random seed");

    for (auto *sub : {split, measure, simulate, verify, bench}) add_output(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (out.format.empty()) {
        out.format = *bench ? "csv" : "json";
    }

    try {
        if (*split) return cmd_split(n, nu, k, out);
        if (*measure) return cmd_measure(state_spec, pvm_spec, out);
        if (*simulate) return cmd_simulate(config_path, traces_path, workers, seed, out);
        if (*verify) return cmd_verify(max_n, seeds, tolerance, workers, corrupt_xi, out);
        if (*bench) return cmd_bench(sizes, repetitions, dense_max, bench_seed, out);
    } catch (const dicke::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const dicke::ResourceLimitError &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const dicke::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception &e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kUnexpected;
    }
    return kUnexpected;
}
