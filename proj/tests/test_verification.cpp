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

#include <algorithm>

#include "dicke/errors.hpp"
#include "dicke/verification.hpp"
#include "gtest/gtest.h"

using namespace dicke;
using namespace dicke::verify;

TEST(Verification, SmallSuitePasses) {
    SuiteOptions o;
    o.params.max_n = 5;
    o.params.seeds = 5;
    const auto results = run_suite(o);
    EXPECT_EQ(results.size(), 17u);
    for (const auto &r : results) {
        EXPECT_TRUE(r.passed) << r.name << ": " << r.worst_residual << " vs " << r.tolerance << " " << r.detail;
        EXPECT_GT(r.trials, 0) << r.name;
    }
}

TEST(Verification, CorruptedCoefficientIsCaught) {
    Params p;
    p.max_n = 4;
    p.seeds = 2;
    const auto r = xi_oracle(p, true);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.worst_residual, 1.0);
    EXPECT_TRUE(xi_oracle(p, false).passed);
}

TEST(Verification, ReferenceUpdateMatchesMixedMeasurement) {
    const auto rho = SymmetricDensity::maximally_mixed(3);
    const auto pvm = pvm_from_bloch(0.7, 0.2);
    const auto out = measure_mixed(rho, pvm);
    for (int l = 0; l < 2; ++l) {
        const auto ref = pvm_update_reference(rho, pvm, l);
        double tr = 0.0;
        for (int i = 0; i < 3; ++i) tr += ref[static_cast<std::size_t>(i * 3 + i)].real();
        EXPECT_NEAR(tr, out[static_cast<std::size_t>(l)].probability, 1e-14);
    }
}

TEST(Verification, RefusesBeyondDenseCap) {
    SuiteOptions o;
    o.params.max_n = 13;
    EXPECT_THROW(run_suite(o), ResourceLimitError);
}
