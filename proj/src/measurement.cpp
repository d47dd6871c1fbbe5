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

#include "dicke/measurement.hpp"

#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

Mat2 identity2() {
    return Mat2{{{1.0, 0.0}, {0.0, 1.0}}};
}

Mat2 adjoint(const Mat2 &m) {
    return Mat2{{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

Mat2 operator*(const Mat2 &a, const Mat2 &b) {
    Mat2 c{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return c;
}

namespace {

double max_deviation_from_identity(const Mat2 &m) {
    const Mat2 id = identity2();
    double dev = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            dev = std::max(dev, std::abs(m[i][j] - id[i][j]));
        }
    }
    return dev;
}

void require_measurable(int n, const char *op) {
    if (n < 1) {
        throw DomainError(std::string(op) + ": state has no qubit left to act on");
    }
}

}  // namespace

void require_complete(std::span<const SingleQubitKraus> kraus) {
    if (kraus.empty()) {
        throw InvalidMeasurementError("Kraus set is empty");
    }
    Mat2 sum{};
    for (const auto &k : kraus) {
        const Mat2 e = adjoint(k.matrix) * k.matrix;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                sum[i][j] += e[i][j];
            }
        }
    }
    const double dev = max_deviation_from_identity(sum);
    if (!(dev <= kCompletenessTolerance)) {
        throw InvalidMeasurementError("Kraus set is not complete: |sum K^dagger K - I|_max = " + std::to_string(dev));
    }
}

SingleQubitPVM::SingleQubitPVM(const Mat2 &kappa) : kappa_(kappa) {
    const double dev = max_deviation_from_identity(kappa_ * adjoint(kappa_));
    if (!(dev <= 1e-12)) {
        throw InvalidMeasurementError("PVM basis is not orthonormal: |kappa kappa^dagger - I|_max = " +
                                      std::to_string(dev));
    }
}

std::array<cplx, 2> SingleQubitPVM::basis_vector(int label) const {
    const auto &row = kappa_.at(static_cast<std::size_t>(label));
    return {std::conj(row[0]), std::conj(row[1])};
}

KrausSet SingleQubitPVM::kraus() const {
    KrausSet out;
    for (int l = 0; l < 2; ++l) {
        const auto v = basis_vector(l);
        Mat2 k{};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                k[a][b] = v[a] * std::conj(v[b]);
            }
        }
        out.push_back({l, k});
    }
    return out;
}

SingleQubitPVM pvm_from_bloch(double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const cplx e = std::polar(1.0, phi);
    // Rows hold the conjugated components of |0'> = (c, e s) and |1'> = (-conj(e) s, c).
    return SingleQubitPVM(Mat2{{{c, std::conj(e) * s}, {-e * s, c}}});
}

SingleQubitPVM computational_pvm() {
    return SingleQubitPVM(identity2());
}

template <class State>
const State &MeasurementOutcome<State>::conditional_state() const {
    if (!post_state) {
        throw ZeroProbabilityError("outcome " + std::to_string(label) + " has probability " +
                                   std::to_string(probability) + " below the conditioning threshold");
    }
    return *post_state;
}

template struct MeasurementOutcome<SymmetricKet>;
template struct MeasurementOutcome<SymmetricDensity>;

std::array<PureOutcome, 2> measure_pure(const SymmetricKet &ket, const SingleQubitPVM &pvm) {
    const int n = ket.n();
    require_measurable(n, "measure_pure");
    const auto psi = ket.amps();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    std::array<PureOutcome, 2> out{};
    for (int l = 0; l < 2; ++l) {
        const cplx k0 = pvm.kappa()[l][0] * inv_sqrt_n;
        const cplx k1 = pvm.kappa()[l][1] * inv_sqrt_n;
        std::vector<cplx> branch(static_cast<std::size_t>(n));
        double p = 0.0;
        for (int nu = 0; nu < n; ++nu) {
            const auto i = static_cast<std::size_t>(nu);
            const cplx b = std::sqrt(static_cast<double>(n - nu)) * psi[i] * k0 +
                           std::sqrt(static_cast<double>(nu + 1)) * psi[i + 1] * k1;
            branch[i] = b;
            p += std::norm(b);
        }
        out[static_cast<std::size_t>(l)].label = l;
        out[static_cast<std::size_t>(l)].probability = p;
        if (p >= kZeroProbability) {
            out[static_cast<std::size_t>(l)].post_state = SymmetricKet::normalized(std::move(branch));
        }
    }
    return out;
}

std::vector<MixedOutcome> measure_mixed(const SymmetricDensity &rho, std::span<const SingleQubitKraus> kraus) {
    const int n = rho.n();
    require_measurable(n, "measure_mixed");
    require_complete(kraus);
    const double dn = n;
    // f[b][x]: amplitude of |x>_{n-1}|b> inside |x+b>_n.
    std::vector<double> f0(static_cast<std::size_t>(n));
    std::vector<double> f1(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        f0[static_cast<std::size_t>(x)] = std::sqrt((dn - x) / dn);
        f1[static_cast<std::size_t>(x)] = std::sqrt((x + 1.0) / dn);
    }
    const auto d = static_cast<std::size_t>(n);
    std::vector<MixedOutcome> out;
    out.reserve(kraus.size());
    for (const auto &k : kraus) {
        const Mat2 e = adjoint(k.matrix) * k.matrix;
        std::vector<cplx> next(d * d);
        double p = 0.0;
        for (int nu = 0; nu < n; ++nu) {
            const auto iv = static_cast<std::size_t>(nu);
            for (int mu = 0; mu < n; ++mu) {
                const auto im = static_cast<std::size_t>(mu);
                // Tr[K |b><b'| K^dagger] = E[b'][b].
                const cplx v = e[0][0] * f0[iv] * f0[im] * rho(nu, mu) +
                               e[1][0] * f0[iv] * f1[im] * rho(nu, mu + 1) +
                               e[0][1] * f1[iv] * f0[im] * rho(nu + 1, mu) +
                               e[1][1] * f1[iv] * f1[im] * rho(nu + 1, mu + 1);
                next[iv * d + im] = v;
            }
            p += next[iv * d + iv].real();
        }
        p = std::max(p, 0.0);
        MixedOutcome o{k.label, p, std::nullopt};
        if (p >= kZeroProbability) {
            o.post_state = SymmetricDensity::normalized(n - 1, std::move(next));
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<MixedOutcome> measure_mixed(const SymmetricDensity &rho, const SingleQubitPVM &pvm) {
    const auto k = pvm.kraus();
    return measure_mixed(rho, std::span<const SingleQubitKraus>(k));
}

SymmetricDensity lose_qubit(const SymmetricDensity &rho) {
    const int n = rho.n();
    require_measurable(n, "lose_qubit");
    const double dn = n;
    const auto d = static_cast<std::size_t>(n);
    std::vector<cplx> next(d * d);
    for (int nu = 0; nu < n; ++nu) {
        for (int mu = 0; mu < n; ++mu) {
            next[static_cast<std::size_t>(nu) * d + static_cast<std::size_t>(mu)] =
                rho(nu, mu) * std::sqrt((dn - nu) * (dn - mu)) / dn +
                rho(nu + 1, mu + 1) * std::sqrt((nu + 1.0) * (mu + 1.0)) / dn;
        }
    }
    return SymmetricDensity::normalized(n - 1, std::move(next));
}

SymmetricDensity lose_qubit_pure(const SymmetricKet &ket) {
    require_measurable(ket.n(), "lose_qubit_pure");
    return lose_qubit(to_density(ket));
}

double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(std::span<const double> probabilities, Rng &rng) {
    double total = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] > 0.0) {
            total += probabilities[i];
            last_positive = i;
        }
    }
    if (!(total > 0.0)) {
        throw ZeroProbabilityError("sample_index: no outcome has positive probability");
    }
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] > 0.0) {
            acc += probabilities[i];
            if (u < acc) {
                return i;
            }
        }
    }
    return last_positive;
}

}  // namespace dicke
