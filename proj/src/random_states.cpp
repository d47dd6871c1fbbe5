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

#include "dicke/random_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

double standard_normal(Rng &rng) {
    // Box-Muller on the library's own uniform draws keeps sequences identical across
    // standard library implementations.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// S^{-1/2} for a 2x2 Hermitian positive-definite S.
Mat2 inverse_sqrt(const Mat2 &s) {
    const double det = (s[0][0] * s[1][1] - s[0][1] * s[1][0]).real();
    const double tr = (s[0][0] + s[1][1]).real();
    const double sd = std::sqrt(det);
    const double t = std::sqrt(tr + 2.0 * sd);
    // sqrt(S) = (S + sqrt(det) I) / t
    Mat2 r{{{(s[0][0] + sd) / t, s[0][1] / t}, {s[1][0] / t, (s[1][1] + sd) / t}}};
    const cplx rdet = r[0][0] * r[1][1] - r[0][1] * r[1][0];
    return Mat2{{{r[1][1] / rdet, -r[0][1] / rdet}, {-r[1][0] / rdet, r[0][0] / rdet}}};
}

}  // namespace

cplx random_gaussian(Rng &rng) {
    const double re = standard_normal(rng);
    return {re, standard_normal(rng)};
}

int random_int(int lo, int hi, Rng &rng) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

SymmetricKet random_ket(int n, Rng &rng) {
    std::vector<cplx> amps(static_cast<std::size_t>(n) + 1);
    for (auto &a : amps) a = random_gaussian(rng);
    return make_ket(n, std::move(amps));
}

SymmetricDensity random_density(int n, int rank, Rng &rng) {
    const auto d = static_cast<std::size_t>(n) + 1;
    const auto r = static_cast<std::size_t>(std::max(rank, 1));
    std::vector<cplx> g(d * r);
    for (auto &x : g) x = random_gaussian(rng);
    std::vector<cplx> alpha(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx acc{};
            for (std::size_t k = 0; k < r; ++k) acc += g[i * r + k] * std::conj(g[j * r + k]);
            alpha[i * d + j] = acc;
        }
    }
    return SymmetricDensity::normalized(n, std::move(alpha));
}

SingleQubitPVM random_pvm(Rng &rng) {
    const double theta = std::acos(1.0 - 2.0 * uniform01(rng));
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    Mat2 kappa = pvm_from_bloch(theta, phi).kappa();
    for (auto &row : kappa) {
        const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
        row[0] *= phase;
        row[1] *= phase;
    }
    return SingleQubitPVM(kappa);
}

KrausSet random_kraus_set(int count, Rng &rng) {
    if (count < 1) {
        throw DomainError("random_kraus_set: need at least one operator");
    }
    std::vector<Mat2> a(static_cast<std::size_t>(count));
    Mat2 s{};
    for (auto &m : a) {
        for (auto &row : m) {
            for (auto &x : row) x = random_gaussian(rng);
        }
        const Mat2 e = adjoint(m) * m;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) s[i][j] += e[i][j];
        }
    }
    const Mat2 w = inverse_sqrt(s);
    KrausSet out;
    for (int l = 0; l < count; ++l) {
        out.push_back({l, a[static_cast<std::size_t>(l)] * w});
    }
    return out;
}

dense::DenseDensity random_dense_density(int n, int rank, Rng &rng) {
    const std::size_t dim = std::size_t{1} << n;
    const auto r = static_cast<std::size_t>(std::max(rank, 1));
    std::vector<cplx> g(dim * r);
    for (auto &x : g) x = random_gaussian(rng);
    dense::DenseDensity out{n, std::vector<cplx>(dim * dim)};
    double tr = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cplx acc{};
            for (std::size_t k = 0; k < r; ++k) acc += g[i * r + k] * std::conj(g[j * r + k]);
            out(i, j) = acc;
        }
        tr += out(i, i).real();
    }
    for (auto &x : out.m) x /= tr;
    return out;
}

std::vector<int> random_positions(int n, int count, Rng &rng) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j + 1;
    for (int i = n - 1; i > 0; --i) {
        std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(random_int(0, i, rng))]);
    }
    all.resize(static_cast<std::size_t>(std::min(count, n)));
    return all;
}

}  // namespace dicke
