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

#include "dicke/symmetric_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

void require_qubits(int n, const char *op) {
    if (n < 1) {
        throw DomainError(std::string(op) + ": qubit count must be positive, got " + std::to_string(n));
    }
}

}  // namespace

SymmetricKet SymmetricKet::normalized(std::vector<cplx> amps) {
    if (amps.empty()) {
        throw DomainError("SymmetricKet: amplitude vector must hold n+1 >= 1 entries");
    }
    double norm2 = 0.0;
    for (const auto &a : amps) {
        norm2 += std::norm(a);
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw DegenerateStateError("SymmetricKet: amplitudes have zero (or non-finite) norm");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : amps) {
        a *= inv;
    }
    return SymmetricKet(std::move(amps));
}

SymmetricDensity SymmetricDensity::normalized(int n, std::vector<cplx> alpha) {
    if (n < 0) {
        throw DomainError("SymmetricDensity: negative qubit count");
    }
    const auto d = static_cast<std::size_t>(n) + 1;
    if (alpha.size() != d * d) {
        throw DomainError("SymmetricDensity: expected " + std::to_string(d * d) + " entries, got " +
                          std::to_string(alpha.size()));
    }
    double tr = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        tr += alpha[i * d + i].real();
    }
    for (const auto &a : alpha) {
        scale = std::max(scale, std::abs(a));
    }
    if (!(tr > 0.0) || !std::isfinite(tr)) {
        throw DegenerateStateError("SymmetricDensity: trace must be positive");
    }
    const double herm_tol = 1e-10 * std::max(1.0, scale);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            const cplx a = alpha[i * d + j];
            const cplx b = std::conj(alpha[j * d + i]);
            if (std::abs(a - b) > herm_tol) {
                throw DomainError("SymmetricDensity: matrix is not Hermitian at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
            }
            const cplx avg = 0.5 * (a + b) / tr;
            alpha[i * d + j] = avg;
            alpha[j * d + i] = std::conj(avg);
        }
    }
    return SymmetricDensity(n, std::move(alpha));
}

SymmetricDensity SymmetricDensity::maximally_mixed(int n) {
    require_qubits(n, "maximally_mixed");
    const auto d = static_cast<std::size_t>(n) + 1;
    std::vector<cplx> alpha(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        alpha[i * d + i] = 1.0 / static_cast<double>(d);
    }
    return SymmetricDensity(n, std::move(alpha));
}

double SymmetricDensity::trace() const {
    double tr = 0.0;
    for (int i = 0; i < dim(); ++i) {
        tr += (*this)(i, i).real();
    }
    return tr;
}

SymmetricKet basis_state(int n, int nu) {
    require_qubits(n, "basis_state");
    if (nu < 0 || nu > n) {
        throw DomainError("basis_state: nu=" + std::to_string(nu) + " outside [0," + std::to_string(n) + "]");
    }
    std::vector<cplx> amps(static_cast<std::size_t>(n) + 1);
    amps[static_cast<std::size_t>(nu)] = 1.0;
    return SymmetricKet::normalized(std::move(amps));
}

SymmetricKet make_ket(int n, std::vector<cplx> amps) {
    require_qubits(n, "make_ket");
    if (amps.size() != static_cast<std::size_t>(n) + 1) {
        throw DomainError("make_ket: expected " + std::to_string(n + 1) + " amplitudes, got " +
                          std::to_string(amps.size()));
    }
    return SymmetricKet::normalized(std::move(amps));
}

SymmetricKet noon_state(int n) {
    require_qubits(n, "noon_state");
    std::vector<cplx> amps(static_cast<std::size_t>(n) + 1);
    amps.front() = 1.0;
    amps.back() += 1.0;
    return SymmetricKet::normalized(std::move(amps));
}

SymmetricKet product_state(int n, double theta, double phi) {
    require_qubits(n, "product_state");
    const double c = std::abs(std::cos(theta / 2));
    const double s = std::abs(std::sin(theta / 2));
    // Signs of cos/sin are folded into the relative phase below.
    const cplx phase0 = std::cos(theta / 2) < 0 ? -1.0 : 1.0;
    const cplx phase1 = std::polar(1.0, phi) * (std::sin(theta / 2) < 0 ? -1.0 : 1.0);
    std::vector<cplx> amps(static_cast<std::size_t>(n) + 1);
    for (int nu = 0; nu <= n; ++nu) {
        const int zeros = n - nu;
        if ((zeros > 0 && c == 0.0) || (nu > 0 && s == 0.0)) {
            continue;
        }
        const double log_binom = std::lgamma(n + 1.0) - std::lgamma(nu + 1.0) - std::lgamma(zeros + 1.0);
        double log_mag = 0.5 * log_binom;
        if (zeros > 0) log_mag += zeros * std::log(c);
        if (nu > 0) log_mag += nu * std::log(s);
        amps[static_cast<std::size_t>(nu)] =
            std::exp(log_mag) * std::pow(phase0, zeros) * std::pow(phase1, nu);
    }
    return SymmetricKet::normalized(std::move(amps));
}

double xi_coefficient(int k, int n, int mu, int nu) {
    if (n < 0 || k < 0 || k > n || nu < 0 || nu > n || mu < 0 || mu > k) {
        throw DomainError("xi_coefficient: require 0<=k<=n, 0<=nu<=n, 0<=mu<=k; got k=" + std::to_string(k) +
                          " n=" + std::to_string(n) + " mu=" + std::to_string(mu) + " nu=" + std::to_string(nu));
    }
    if (mu > nu || nu - mu > n - k) {
        return 0.0;
    }
    // Flipping every bit maps (mu, nu) to (k-mu, n-nu) and leaves the coefficient
    // unchanged; take the side with fewer factors.
    if (nu > n - nu) {
        mu = k - mu;
        nu = n - nu;
    }
    // Xi^2 = C(nu, mu) * prod_{t=1..nu} f_t / (n - nu + t), where the f_t are
    // (k-mu+i), i=1..mu followed by (n-k-nu+mu+j), j=1..nu-mu. Every ratio
    // f_t / (n-nu+t) is <= 1 while the C(nu, mu) factors are >= 1; interleaving
    // them keeps the running product near its final magnitude.
    const int lo = std::min(mu, nu - mu);
    int t = 0;
    int i = 0;
    double value = 1.0;
    auto shrink = [&] {
        ++t;
        const double num = t <= mu ? static_cast<double>(k - mu + t) : static_cast<double>(n - k - nu + t);
        value *= num / static_cast<double>(n - nu + t);
    };
    auto grow = [&] {
        ++i;
        value *= static_cast<double>(nu - lo + i) / static_cast<double>(i);
    };
    while (t < nu && i < lo) {
        if (value >= 1.0) {
            shrink();
        } else {
            grow();
        }
    }
    while (t < nu) shrink();
    while (i < lo) grow();
    return std::sqrt(value);
}

std::vector<SplitCoefficient> general_split(int n, int nu, int k) {
    if (n < 0 || k < 0 || k > n || nu < 0 || nu > n) {
        throw DomainError("general_split: require 0<=k<=n and 0<=nu<=n; got n=" + std::to_string(n) +
                          " nu=" + std::to_string(nu) + " k=" + std::to_string(k));
    }
    std::vector<SplitCoefficient> out;
    const int first = std::max(0, nu - (n - k));
    const int last = std::min(k, nu);
    out.reserve(static_cast<std::size_t>(last - first + 1));
    for (int mu = first; mu <= last; ++mu) {
        out.push_back({mu, xi_coefficient(k, n, mu, nu)});
    }
    return out;
}

QubitBranches split_last_qubit(const SymmetricKet &ket) {
    const int n = ket.n();
    require_qubits(n, "split_last_qubit");
    QubitBranches br{std::vector<cplx>(static_cast<std::size_t>(n)), std::vector<cplx>(static_cast<std::size_t>(n))};
    const double dn = n;
    for (int nu = 0; nu < n; ++nu) {
        br.c0[static_cast<std::size_t>(nu)] = ket[nu] * std::sqrt((dn - nu) / dn);
        br.c1[static_cast<std::size_t>(nu)] = ket[nu + 1] * std::sqrt((nu + 1.0) / dn);
    }
    return br;
}

SymmetricDensity to_density(const SymmetricKet &ket) {
    const auto d = ket.amps().size();
    std::vector<cplx> alpha(d * d);
    for (std::size_t mu = 0; mu < d; ++mu) {
        for (std::size_t nu = 0; nu < d; ++nu) {
            alpha[mu * d + nu] = ket.amps()[mu] * std::conj(ket.amps()[nu]);
        }
    }
    return SymmetricDensity::normalized(ket.n(), std::move(alpha));
}

}  // namespace dicke
