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

#include "dicke/dense_oracle.hpp"
#include "dicke/errors.hpp"
#include "dicke/random_states.hpp"
#include "dicke/symmetric_state.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace dicke;
using dicke::testing::expect_near;

namespace {

std::vector<cplx> reals(std::initializer_list<double> v) {
    return {v.begin(), v.end()};
}

// Xi^2 as a hypergeometric ratio evaluated in extended precision.
long double xi_reference(int k, int n, int mu, int nu) {
    auto lchoose = [](long double a, long double b) {
        return std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1);
    };
    const long double log_sq = lchoose(n - k, nu - mu) + lchoose(k, mu) - lchoose(n, nu);
    return std::exp(0.5L * log_sq);
}

}  // namespace

TEST(BasisState, IsAUnitVector) {
    expect_near(basis_state(3, 1).amps(), reals({0, 1, 0, 0}), 0.0);
}

TEST(BasisState, SingleQubitIsComputationalState) {
    const auto k = basis_state(1, 0);
    expect_near(k.amps(), reals({1, 0}), 0.0);
    expect_near(dense::expand(k).amps, reals({1, 0}), 0.0);
}

TEST(BasisState, ExpandsToEqualWeightSuperposition) {
    const auto d = dense::expand(basis_state(5, 2));
    int nonzero = 0;
    for (std::uint64_t a = 0; a < d.amps.size(); ++a) {
        if (dense::hamming_weight(a) == 2) {
            ++nonzero;
            EXPECT_NEAR(d.amps[a].real(), 1.0 / std::sqrt(10.0), 1e-15);
        } else {
            EXPECT_EQ(d.amps[a], cplx{});
        }
    }
    EXPECT_EQ(nonzero, 10);
}

TEST(BasisState, RejectsOutOfRangeWeight) {
    EXPECT_THROW(basis_state(3, 4), DomainError);
    EXPECT_THROW(basis_state(3, -1), DomainError);
    EXPECT_THROW(basis_state(0, 0), DomainError);
}

TEST(MakeKet, Normalizes) {
    const double h = 1.0 / std::sqrt(2.0);
    expect_near(make_ket(2, reals({1, 0, 1})).amps(), reals({h, 0, h}), 1e-15);
    EXPECT_EQ(make_ket(3, reals({0, 2, 0, 0})), basis_state(3, 1));
    const double f = 1.0 / std::sqrt(5.0);
    expect_near(make_ket(4, reals({1, 1, 1, 1, 1})).amps(), reals({f, f, f, f, f}), 1e-15);
}

TEST(MakeKet, RejectsDegenerateAndMisSizedInput) {
    EXPECT_THROW(make_ket(2, reals({0, 0, 0})), DegenerateStateError);
    EXPECT_THROW(make_ket(2, reals({1, 0})), DomainError);
}

TEST(MakeKet, NormalizationClosure) {
    Rng rng(7);
    for (int n = 1; n <= 40; ++n) {
        const auto k = random_ket(n, rng);
        double s = 0.0;
        for (const auto &a : k.amps()) s += std::norm(a);
        EXPECT_NEAR(s, 1.0, 1e-12);
        EXPECT_EQ(static_cast<int>(k.amps().size()), n + 1);
    }
}

TEST(Xi, WorkedExample) {
    EXPECT_NEAR(xi_coefficient(1, 3, 1, 1), std::sqrt(1.0 / 3.0), 1e-15);
    EXPECT_NEAR(xi_coefficient(1, 3, 0, 1), std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(Xi, MatchesDenseInnerProduct) {
    const cplx oracle = dense::split_inner_product(4, 2, 2, 1);
    // Frozen from the oracle: C(2,1) C(2,1) / C(4,2) = 2/3.
    EXPECT_NEAR(oracle.real(), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(xi_coefficient(2, 4, 1, 2), oracle.real(), 1e-14);
}

TEST(Xi, ExactlyZeroOutsideSupport) {
    EXPECT_EQ(xi_coefficient(2, 5, 2, 1), 0.0);  // mu > nu
    EXPECT_EQ(xi_coefficient(1, 5, 0, 5), 0.0);  // nu - mu > n - k
    EXPECT_EQ(xi_coefficient(5, 5, 0, 3), 0.0);
}

TEST(Xi, RejectsPreconditionViolations) {
    EXPECT_THROW(xi_coefficient(4, 3, 0, 0), DomainError);
    EXPECT_THROW(xi_coefficient(1, 3, 2, 1), DomainError);
    EXPECT_THROW(xi_coefficient(1, 3, 0, 4), DomainError);
    EXPECT_THROW(xi_coefficient(-1, 3, 0, 0), DomainError);
}

TEST(Xi, CompletenessAndSupportUpToThirty) {
    for (int n = 0; n <= 30; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int nu = 0; nu <= n; ++nu) {
                double sum = 0.0;
                for (int mu = 0; mu <= k; ++mu) {
                    const double x = xi_coefficient(k, n, mu, nu);
                    if (mu > nu || nu - mu > n - k) {
                        ASSERT_EQ(x, 0.0);
                    } else {
                        ASSERT_GT(x, 0.0);
                        ASSERT_LE(x, 1.0);
                    }
                    sum += x * x;
                }
                ASSERT_NEAR(sum, 1.0, 1e-12) << "n=" << n << " k=" << k << " nu=" << nu;
            }
        }
    }
}

TEST(Xi, AccurateForLargeQubitCounts) {
    struct Case {
        int k, n, mu, nu;
    };
    for (const auto c : {Case{1, 1000, 1, 400}, Case{10, 5000, 3, 1500}, Case{500, 100000, 250, 50000},
                         Case{3, 1000000, 1, 333333}, Case{1000, 1000000, 500, 500000}}) {
        const double got = xi_coefficient(c.k, c.n, c.mu, c.nu);
        const auto ref = static_cast<double>(xi_reference(c.k, c.n, c.mu, c.nu));
        EXPECT_NEAR(got / ref, 1.0, 1e-11) << "k=" << c.k << " n=" << c.n;
    }
}

TEST(GeneralSplit, WorkedExample) {
    const auto s = general_split(3, 1, 1);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].mu, 0);
    EXPECT_NEAR(s[0].value, std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_EQ(s[1].mu, 1);
    EXPECT_NEAR(s[1].value, std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(GeneralSplit, VacuumSplitsTrivially) {
    for (int k = 0; k <= 6; ++k) {
        const auto s = general_split(6, 0, k);
        ASSERT_EQ(s.size(), 1u);
        EXPECT_EQ(s[0].mu, 0);
        EXPECT_EQ(s[0].value, 1.0);
    }
}

TEST(GeneralSplit, MatchesDenseOracle) {
    const auto s = general_split(8, 4, 3);
    ASSERT_EQ(s.size(), 4u);
    double sum = 0.0;
    for (const auto &c : s) {
        EXPECT_NEAR(c.value, dense::split_inner_product(8, 4, 3, c.mu).real(), 1e-14);
        sum += c.value * c.value;
    }
    EXPECT_NEAR(sum, 1.0, 1e-14);
}

TEST(GeneralSplit, RangeCoversOnlySupport) {
    const auto s = general_split(10, 9, 4);
    ASSERT_FALSE(s.empty());
    EXPECT_EQ(s.front().mu, 3);
    EXPECT_EQ(s.back().mu, 4);
    EXPECT_THROW(general_split(3, 1, 4), DomainError);
}

TEST(SplitLastQubit, WorkedExample) {
    const auto br = split_last_qubit(basis_state(3, 1));
    expect_near(br.c0, reals({0, std::sqrt(2.0 / 3.0), 0}), 1e-15);
    expect_near(br.c1, reals({std::sqrt(1.0 / 3.0), 0, 0}), 1e-15);
}

TEST(SplitLastQubit, AllZerosHasNoOneBranch) {
    const auto br = split_last_qubit(basis_state(5, 0));
    expect_near(br.c0, reals({1, 0, 0, 0, 0}), 0.0);
    expect_near(br.c1, reals({0, 0, 0, 0, 0}), 0.0);
}

TEST(SplitLastQubit, ReconstructsDenseState) {
    Rng rng(11);
    for (int n = 1; n <= 12; ++n) {
        const auto ket = random_ket(n, rng);
        const auto br = split_last_qubit(ket);
        // Rebuild sum_nu c0|nu>|0> + c1|nu>|1> from dense factors.
        dense::DenseKet rebuilt{n, std::vector<cplx>(std::size_t{1} << n)};
        for (int nu = 0; nu < n; ++nu) {
            for (int b = 0; b < 2; ++b) {
                const auto &c = b == 0 ? br.c0 : br.c1;
                const auto rest = n > 1 ? dense::expand(basis_state(n - 1, nu)) : dense::DenseKet{0, {1.0}};
                const auto term = dense::kron(rest, dense::DenseKet{1, {b == 0 ? 1.0 : 0.0, b == 1 ? 1.0 : 0.0}});
                for (std::size_t i = 0; i < term.amps.size(); ++i) rebuilt.amps[i] += c[static_cast<std::size_t>(nu)] * term.amps[i];
            }
        }
        expect_near(rebuilt.amps, dense::expand(ket).amps, 1e-12);
    }
}

TEST(SplitLastQubit, AgreesWithGeneralSplit) {
    for (int n = 1; n <= 15; ++n) {
        for (int nu = 0; nu <= n; ++nu) {
            const auto br = split_last_qubit(basis_state(n, nu));
            for (const auto &c : general_split(n, nu, 1)) {
                const cplx got = c.mu == 0 ? br.c0[static_cast<std::size_t>(nu)] : br.c1[static_cast<std::size_t>(nu - 1)];
                EXPECT_NEAR(got.real(), c.value, 1e-15);
            }
        }
    }
}

TEST(SplitLastQubit, RejectsEmptyState) {
    EXPECT_THROW(split_last_qubit(SymmetricKet::normalized({1.0})), DomainError);
}

TEST(ToDensity, Examples) {
    const auto p = to_density(basis_state(2, 1));
    expect_near(p.data(), reals({0, 0, 0, 0, 1, 0, 0, 0, 0}), 0.0);

    const auto plus = to_density(make_ket(1, reals({1, 1})));
    expect_near(plus.data(), reals({0.5, 0.5, 0.5, 0.5}), 1e-15);

    const auto noon = to_density(noon_state(2));
    expect_near(noon.data(), reals({0.5, 0, 0.5, 0, 0, 0, 0.5, 0, 0.5}), 1e-15);
}

TEST(ToDensity, IsAValidRankOneState) {
    Rng rng(3);
    for (int n = 1; n <= 20; ++n) {
        const auto rho = to_density(random_ket(n, rng));
        dicke::testing::expect_valid_density(rho);
    }
}

TEST(SymmetricDensity, RejectsNonHermitianAndZeroTrace) {
    EXPECT_THROW(SymmetricDensity::normalized(1, reals({0.5, 0.3, 0.1, 0.5})), DomainError);
    EXPECT_THROW(SymmetricDensity::normalized(1, reals({0, 0, 0, 0})), DegenerateStateError);
    EXPECT_THROW(SymmetricDensity::normalized(1, reals({1, 0, 0})), DomainError);
}

TEST(ProductState, MatchesDenseTensorPower) {
    const double theta = 1.1;
    const double phi = -0.4;
    const dense::DenseKet one{1, {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)}};
    dense::DenseKet full{0, {1.0}};
    for (int i = 0; i < 5; ++i) full = dense::kron(full, one);
    expect_near(dense::expand(product_state(5, theta, phi)).amps, full.amps, 1e-14);
}

TEST(ProductState, HandlesPoles) {
    EXPECT_EQ(product_state(4, 0.0, 0.0), basis_state(4, 0));
    expect_near(product_state(4, std::numbers::pi, 0.0).amps(), basis_state(4, 4).amps(), 1e-15);
}

TEST(NoonState, CornersOnly) {
    const double h = 1.0 / std::sqrt(2.0);
    expect_near(noon_state(3).amps(), reals({h, 0, 0, h}), 1e-15);
}
