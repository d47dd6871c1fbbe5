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

#include <cmath>
#include <numbers>
#include <vector>

#include "dicke/dense_oracle.hpp"
#include "dicke/errors.hpp"
#include "dicke/measurement.hpp"
#include "dicke/random_states.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace dicke;
using dicke::testing::expect_near;

namespace {

std::vector<cplx> reals(std::initializer_list<double> v) {
    return {v.begin(), v.end()};
}

const double kPi = std::numbers::pi;

void expect_mat_near(const Mat2 &a, const Mat2 &b, double tol) {
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) EXPECT_NEAR(std::abs(a[r][c] - b[r][c]), 0.0, tol) << r << "," << c;
    }
}

// Unnormalized branch K rho K^dagger on the full space, then the unmeasured
// qubits; n = 1 leaves nothing to trace over.
dense::DenseDensity dense_post(const dense::DenseDensity &rho, const SingleQubitKraus &k, double &p) {
    auto branch = dense::apply_operator_at(rho, 1, k.matrix);
    p = branch.trace();
    if (rho.n == 1) return dense::DenseDensity{0, {1.0}};
    for (auto &x : branch.m) x /= p;
    const int first[] = {1};
    return dense::partial_trace(branch, first);
}

}  // namespace

TEST(PvmFromBloch, PolesAndEquator) {
    expect_mat_near(pvm_from_bloch(0, 0).kappa(), identity2(), 1e-15);
    const double h = 1.0 / std::sqrt(2.0);
    const auto x = pvm_from_bloch(kPi / 2, 0);
    expect_near(x.basis_vector(0), reals({h, h}), 1e-15);
    expect_near(x.basis_vector(1), reals({-h, h}), 1e-15);
}

TEST(PvmFromBloch, AlwaysOrthonormal) {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto p = pvm_from_bloch(4 * uniform01(rng), 10 * (uniform01(rng) - 0.5));
        expect_mat_near(p.kappa() * adjoint(p.kappa()), identity2(), 1e-13);
        require_complete(p.kraus());
    }
}

TEST(SingleQubitPvm, RejectsNonUnitaryOverlaps) {
    Mat2 bad{};
    bad[0][0] = 1;
    bad[1][0] = 1;
    EXPECT_THROW(SingleQubitPVM{bad}, InvalidMeasurementError);
}

TEST(MeasurePure, DickeStateInComputationalBasis) {
    const auto out = measure_pure(basis_state(3, 1), computational_pvm());
    EXPECT_NEAR(out[0].probability, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(out[1].probability, 1.0 / 3.0, 1e-15);
    EXPECT_EQ(out[0].conditional_state(), basis_state(2, 1));
    EXPECT_EQ(out[1].conditional_state(), basis_state(2, 0));
}

TEST(MeasurePure, NoonCollapses) {
    const auto out = measure_pure(noon_state(4), computational_pvm());
    EXPECT_NEAR(out[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(out[1].probability, 0.5, 1e-15);
    expect_near(out[0].conditional_state().amps(), basis_state(3, 0).amps(), 1e-15);
    expect_near(out[1].conditional_state().amps(), basis_state(3, 3).amps(), 1e-15);
}

TEST(MeasurePure, PlusStateInHadamardBasisIsCertain) {
    const auto out = measure_pure(product_state(3, kPi / 2, 0), pvm_from_bloch(kPi / 2, 0));
    EXPECT_NEAR(out[0].probability, 1.0, 1e-14);
    EXPECT_LT(out[1].probability, kZeroProbability);
    EXPECT_FALSE(out[1].post_state.has_value());
    EXPECT_THROW(out[1].conditional_state(), ZeroProbabilityError);
    expect_near(out[0].conditional_state().amps(), product_state(2, kPi / 2, 0).amps(), 1e-14);
}

TEST(MeasurePure, SingleQubitLeavesEmptyRegister) {
    const auto out = measure_pure(make_ket(1, reals({1, 1})), computational_pvm());
    EXPECT_NEAR(out[0].probability, 0.5, 1e-15);
    EXPECT_EQ(out[0].conditional_state().n(), 0);
}

TEST(MeasurePure, AgreesWithDenseOracle) {
    Rng rng(21);
    for (int n = 1; n <= 9; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto ket = random_ket(n, rng);
            const auto pvm = random_pvm(rng);
            const auto out = measure_pure(ket, pvm);
            const auto rho = dense::to_density(dense::expand(ket));
            double total = 0.0;
            for (int l = 0; l < 2; ++l) {
                double p = 0.0;
                const auto post = dense_post(rho, pvm.kraus()[static_cast<std::size_t>(l)], p);
                EXPECT_NEAR(out[l].probability, p, 1e-12);
                total += out[l].probability;
                if (p > 1e-10) {
                    const auto exp = dense::expand(to_density(out[l].conditional_state()));
                    EXPECT_LE(dense::max_abs_diff(exp.m, post.m), 1e-12);
                }
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
        }
    }
}

TEST(MeasureMixed, MaximallyMixedIsUnbiased) {
    for (int n = 1; n <= 10; ++n) {
        const auto out = measure_mixed(SymmetricDensity::maximally_mixed(n), computational_pvm());
        ASSERT_EQ(out.size(), 2u);
        EXPECT_NEAR(out[1].probability, 0.5, 1e-14);
    }
}

TEST(MeasureMixed, MatchesPureUpdateOnRankOneStates) {
    Rng rng(13);
    for (int n = 1; n <= 12; ++n) {
        const auto ket = random_ket(n, rng);
        const auto pvm = random_pvm(rng);
        const auto pure = measure_pure(ket, pvm);
        const auto mixed = measure_mixed(to_density(ket), pvm);
        for (int l = 0; l < 2; ++l) {
            EXPECT_NEAR(pure[l].probability, mixed[l].probability, 1e-13);
            if (pure[l].post_state) {
                expect_near(to_density(*pure[l].post_state).data(), mixed[l].conditional_state().data(), 1e-12);
            }
        }
    }
}

TEST(MeasureMixed, GeneralKrausAgreesWithDenseOracle) {
    Rng rng(17);
    for (int n = 1; n <= 7; ++n) {
        for (int count : {1, 2, 3, 4}) {
            const auto rho = random_density(n, 1 + n / 2, rng);
            const auto kraus = random_kraus_set(count, rng);
            const auto out = measure_mixed(rho, kraus);
            ASSERT_EQ(out.size(), kraus.size());
            const auto full = dense::expand(rho);
            for (std::size_t i = 0; i < kraus.size(); ++i) {
                double p = 0.0;
                const auto post = dense_post(full, kraus[i], p);
                EXPECT_EQ(out[i].label, kraus[i].label);
                EXPECT_NEAR(out[i].probability, p, 1e-12);
                if (p > 1e-10) {
                    dicke::testing::expect_valid_density(out[i].conditional_state());
                    EXPECT_LE(dense::max_abs_diff(dense::expand(out[i].conditional_state()).m, post.m), 1e-12);
                }
            }
        }
    }
}

TEST(MeasureMixed, RejectsIncompleteKrausSet) {
    KrausSet k = computational_pvm().kraus();
    k.pop_back();
    EXPECT_THROW(measure_mixed(SymmetricDensity::maximally_mixed(2), k), InvalidMeasurementError);
    EXPECT_THROW(require_complete(k), InvalidMeasurementError);
}

TEST(MeasureMixed, RejectsEmptyRegister) {
    const auto out = measure_mixed(SymmetricDensity::maximally_mixed(1), computational_pvm());
    EXPECT_EQ(out[0].conditional_state().n(), 0);
    EXPECT_THROW(measure_mixed(out[0].conditional_state(), computational_pvm()), DomainError);
}

TEST(LoseQubit, DickeStateBecomesMixture) {
    const auto rho = lose_qubit(to_density(basis_state(3, 1)));
    // Frozen from dense::partial_trace on the expanded state.
    const auto full = dense::to_density(dense::expand(basis_state(3, 1)));
    const int first[] = {1};
    const auto reduced = dense::partial_trace(full, first);
    expect_near(dense::expand(rho).m, reduced.m, 1e-15);
    expect_near(rho.data(), reals({1.0 / 3, 0, 0, 0, 2.0 / 3, 0, 0, 0, 0}), 1e-15);
}

TEST(LoseQubit, NoonLosesCoherence) {
    const auto rho = lose_qubit(to_density(noon_state(3)));
    expect_near(rho.data(), reals({0.5, 0, 0, 0, 0, 0, 0, 0, 0.5}), 1e-15);
}

TEST(LoseQubit, PureShortcutMatches) {
    Rng rng(29);
    for (int n = 1; n <= 15; ++n) {
        const auto ket = random_ket(n, rng);
        expect_near(lose_qubit_pure(ket).data(), lose_qubit(to_density(ket)).data(), 1e-14);
    }
}

TEST(LoseQubit, PreservesPositivityAndTrace) {
    Rng rng(31);
    for (int n = 1; n <= 14; ++n) {
        auto rho = random_density(n, 2, rng);
        while (rho.n() > 0) {
            rho = lose_qubit(rho);
            dicke::testing::expect_valid_density(rho);
        }
    }
}

TEST(MeasureMixed, PostStatesArePositive) {
    Rng rng(37);
    for (int n = 2; n <= 14; ++n) {
        const auto rho = random_density(n, 3, rng);
        for (const auto &o : measure_mixed(rho, random_kraus_set(3, rng))) {
            if (o.post_state) dicke::testing::expect_valid_density(*o.post_state);
        }
    }
}

TEST(SampleOutcome, NeverReturnsZeroProbabilityOutcome) {
    const auto out = measure_pure(basis_state(4, 0), computational_pvm());
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(sample_outcome<SymmetricKet>(out, rng), 0);
    }
    const double p[] = {1.0, 0.0};
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_index(p, rng), 0u);
}

TEST(SampleOutcome, FrequenciesMatchProbabilities) {
    const auto out = measure_pure(make_ket(1, reals({1, 1})), computational_pvm());
    Rng rng(12345);
    int ones = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ones += sample_outcome<SymmetricKet>(out, rng);
    EXPECT_NEAR(static_cast<double>(ones) / draws, 0.5, 0.01);
}

TEST(SampleOutcome, DeterministicForFixedSeed) {
    const auto out = measure_pure(basis_state(5, 2), pvm_from_bloch(1.0, 0.3));
    Rng a(99), b(99);
    for (int i = 0; i < 500; ++i) {
        EXPECT_EQ(sample_outcome<SymmetricKet>(out, a), sample_outcome<SymmetricKet>(out, b));
    }
}

TEST(Uniform01, StaysInUnitInterval) {
    Rng rng(0);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}
