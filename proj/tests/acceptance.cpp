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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dicke/bench.hpp"
#include "dicke/harness.hpp"
#include "dicke/json_io.hpp"
#include "dicke/symmetric_state.hpp"
#include "dicke/verification.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool passed;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Combines several property results into one verdict.
Verdict combine(const std::vector<dicke::verify::PropertyResult> &results, int min_trials = 1) {
    Verdict v{true, ""};
    for (const auto &r : results) {
        v.passed = v.passed && r.passed && r.trials >= min_trials;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s%s: %d cases, worst %.3g (%s %.0e)", v.detail.empty() ? "" : "; ",
                      r.name.c_str(), r.trials, r.worst_residual, r.lower_bound ? ">" : "<=", r.tolerance);
        v.detail += buf;
    }
    return v;
}

dicke::verify::Params params(int max_n, int seeds, double tol) {
    dicke::verify::Params p;
    p.max_n = max_n;
    p.seeds = seeds;
    p.tolerance = tol;
    return p;
}

Verdict worked_example() {
    const auto t0 = Clock::now();
    const auto s = dicke::general_split(3, 1, 1);
    const double elapsed = seconds_since(t0);
    const bool values = s.size() == 2 && s[0].mu == 0 && s[1].mu == 1 &&
                        std::abs(s[0].value - std::sqrt(2.0 / 3.0)) <= 1e-15 &&
                        std::abs(s[1].value - std::sqrt(1.0 / 3.0)) <= 1e-15;
    return {values && elapsed < 1e-3,
            fmt("coefficients %.17g, %.17g; %.3g ms", s.size() > 0 ? s[0].value : NAN, s.size() > 1 ? s[1].value : NAN,
                elapsed * 1e3)};
}

Verdict oracle_equivalence() {
    const auto t0 = Clock::now();
    const auto p = params(10, 50, 1e-10);
    auto v = combine({dicke::verify::ordering_independence(p), dicke::verify::mixed_ordering_independence(p),
                      dicke::verify::pvm_update_formula(p)});
    const double elapsed = seconds_since(t0);
    v.passed = v.passed && elapsed < 120.0;
    v.detail += fmt("; %.1f s", elapsed);
    return v;
}

Verdict loss_independence() {
    const auto p = params(10, 50, 1e-10);
    return combine({dicke::verify::loss_postponement(p), dicke::verify::loss_independence(p),
                    dicke::verify::trace_measure_commutation(p)});
}

Verdict residual_symmetry() {
    // Seven qubit counts (2..8) times 29 seeds gives at least 200 cases.
    return combine({dicke::verify::residual_symmetry(params(8, 29, 1e-10))}, 200);
}

Verdict basis_characterization() {
    const auto p = params(8, 50, 1e-12);
    auto fwd = dicke::verify::basis_characterization_forward(p);
    auto rej = dicke::verify::non_symmetric_rejection(params(8, 15, 1e-10));
    Verdict v = combine({fwd});
    const auto r = combine({rej}, 100);
    v.passed = v.passed && r.passed;
    v.detail += "; " + r.detail;
    return v;
}

Verdict xi_completeness() {
    return combine({dicke::verify::xi_completeness(30)});
}

Verdict pure_state_sufficiency() {
    return combine({dicke::verify::pure_state_sufficiency(params(10, 50, 1e-10))});
}

Verdict scaling() {
    const int sizes[] = {512, 1024, 2048};
    std::vector<dicke::bench::CascadeTiming> t;
    for (const int n : sizes) t.push_back(dicke::bench::time_compact_cascade(n, 5, 1, 0.05));
    bool ok = t.back().median_seconds < 1.0;
    std::string detail;
    for (std::size_t i = 0; i < t.size(); ++i) {
        ok = ok && t[i].peak_state_entries == static_cast<std::size_t>(t[i].n) + 1;
        detail += fmt(i ? ", n=%.0f: %.3g ms" : "n=%.0f: %.3g ms", t[i].n, t[i].median_seconds * 1e3);
        if (i > 0) {
            const double ratio = t[i].median_seconds / t[i - 1].median_seconds;
            ok = ok && ratio >= 3.0 && ratio <= 6.0;
            detail += fmt(" (x%.2f)", ratio);
        }
    }
    detail += fmt("; peak entries %.0f at n=2048", static_cast<double>(t.back().peak_state_entries));
    return {ok, detail};
}

Verdict reproducibility() {
    using namespace dicke;
    const auto config = io::config_from_json(io::json::parse(R"({
        "input": {"type": "product", "theta": 1.5707963267948966, "phi": 0},
        "n": 12, "phi": 0.9,
        "policy": {"type": "feedback", "initial_phase": 0, "step": 1.5707963267948966},
        "schedule": {"events": 12, "loss_rate": 0.2, "seed": 5},
        "trials": 400, "seed": 2026
    })"));
    const auto first = io::report_to_json(run_ensemble(config, 1), config).dump(2);
    const auto second = io::report_to_json(run_ensemble(config, 1), config).dump(2);
    const auto parallel = io::report_to_json(run_ensemble(config, 4), config).dump(2);
    return {first == second && first == parallel,
            fmt("report of %.0f bytes identical across runs and worker counts", static_cast<double>(first.size()))};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria = {
        {"worked-example split", worked_example},
        {"oracle equivalence for measurements", oracle_equivalence},
        {"loss independence", loss_independence},
        {"residual symmetry", residual_symmetry},
        {"basis characterization", basis_characterization},
        {"xi completeness and support", xi_completeness},
        {"pure-state sufficiency", pure_state_sufficiency},
        {"compact cascade scaling", scaling},
        {"deterministic reproducibility", reproducibility},
    };
    int failures = 0;
    int index = 0;
    for (const auto &[name, check] : criteria) {
        ++index;
        Verdict v{false, ""};
        try {
            v = check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.passed ? 0 : 1;
        std::printf("%s criterion %d (%s): %s\n", v.passed ? "PASS" : "FAIL", index, name, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
