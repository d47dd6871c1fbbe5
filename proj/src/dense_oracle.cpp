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

#include "dicke/dense_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "dicke/errors.hpp"

namespace dicke::dense {

namespace {

constexpr int kDefaultDensityCap = 12;
constexpr int kDefaultKetCap = 20;

std::uint64_t bit_of(int position) {
    return std::uint64_t{1} << (position - 1);
}

void require_position(int n, int position) {
    if (position < 1 || position > n) {
        throw DomainError("qubit position " + std::to_string(position) + " outside [1," + std::to_string(n) + "]");
    }
}

void require_ket_cap(int n) {
    if (n > dense_cap().ket) {
        throw ResourceLimitError("dense ket on " + std::to_string(n) + " qubits exceeds the cap of " +
                                 std::to_string(dense_cap().ket));
    }
}

void require_density_cap(int n) {
    if (n > dense_cap().density) {
        throw ResourceLimitError("dense density on " + std::to_string(n) + " qubits exceeds the cap of " +
                                 std::to_string(dense_cap().density));
    }
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return std::round(c);
}

// Moves the bit at position j to position pi(j).
std::uint64_t permute_bits(std::uint64_t a, const Permutation &pi) {
    std::uint64_t out = 0;
    for (int j = 1; j <= pi.size(); ++j) {
        if (a & bit_of(j)) {
            out |= bit_of(pi(j));
        }
    }
    return out;
}

// Unit vector |nu> on n >= 0 qubits.
DenseKet dicke_vector(int n, int nu) {
    DenseKet k{n, std::vector<cplx>(std::size_t{1} << n)};
    const double amp = 1.0 / std::sqrt(binomial(n, nu));
    for (std::uint64_t a = 0; a < k.amps.size(); ++a) {
        if (static_cast<int>(hamming_weight(a)) == nu) {
            k.amps[a] = amp;
        }
    }
    return k;
}

}  // namespace

DenseCap dense_cap() {
    if (const char *env = std::getenv("DICKE_SIM_DENSE_CAP")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 30) {
            return {static_cast<int>(v), static_cast<int>(v)};
        }
    }
    return {kDefaultDensityCap, kDefaultKetCap};
}

double DenseDensity::trace() const {
    double tr = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        tr += (*this)(i, i).real();
    }
    return tr;
}

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    std::vector<bool> seen(mapping_.size(), false);
    for (const int v : mapping_) {
        if (v < 1 || v > size() || seen[static_cast<std::size_t>(v - 1)]) {
            throw DomainError("Permutation: mapping is not a bijection on {1..." + std::to_string(size()) + "}");
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(j)] = j + 1;
    }
    return Permutation(std::move(m));
}

Permutation Permutation::transposition(int n, int a, int b) {
    require_position(n, a);
    require_position(n, b);
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        m[static_cast<std::size_t>(j - 1)] = j == a ? b : (j == b ? a : j);
    }
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<int> m(mapping_.size());
    for (int j = 1; j <= size(); ++j) {
        m[static_cast<std::size_t>((*this)(j) - 1)] = j;
    }
    return Permutation(std::move(m));
}

Permutation Permutation::compose(const Permutation &other) const {
    if (other.size() != size()) {
        throw DomainError("Permutation::compose: size mismatch");
    }
    std::vector<int> m(mapping_.size());
    for (int j = 1; j <= size(); ++j) {
        m[static_cast<std::size_t>(j - 1)] = (*this)(other(j));
    }
    return Permutation(std::move(m));
}

std::size_t hamming_weight(std::uint64_t bits) {
    return static_cast<std::size_t>(std::popcount(bits));
}

DenseKet expand(const SymmetricKet &ket) {
    const int n = ket.n();
    require_ket_cap(n);
    std::vector<double> scale(static_cast<std::size_t>(n) + 1);
    for (int nu = 0; nu <= n; ++nu) {
        scale[static_cast<std::size_t>(nu)] = 1.0 / std::sqrt(binomial(n, nu));
    }
    DenseKet out{n, std::vector<cplx>(std::size_t{1} << n)};
    for (std::uint64_t a = 0; a < out.amps.size(); ++a) {
        const auto w = hamming_weight(a);
        out.amps[a] = ket.amps()[w] * scale[w];
    }
    return out;
}

DenseDensity expand(const SymmetricDensity &rho) {
    const int n = rho.n();
    require_density_cap(n);
    DenseDensity out{n, {}};
    const std::size_t dim = out.dim();
    out.m.resize(dim * dim);
    std::vector<double> scale(static_cast<std::size_t>(n) + 1);
    for (int nu = 0; nu <= n; ++nu) {
        scale[static_cast<std::size_t>(nu)] = 1.0 / std::sqrt(binomial(n, nu));
    }
    for (std::size_t a = 0; a < dim; ++a) {
        const auto wa = hamming_weight(a);
        for (std::size_t b = 0; b < dim; ++b) {
            const auto wb = hamming_weight(b);
            out(a, b) = rho(static_cast<int>(wa), static_cast<int>(wb)) * scale[wa] * scale[wb];
        }
    }
    return out;
}

DenseDensity to_density(const DenseKet &ket) {
    require_density_cap(ket.n);
    DenseDensity out{ket.n, {}};
    const std::size_t dim = out.dim();
    out.m.resize(dim * dim);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            out(a, b) = ket.amps[a] * std::conj(ket.amps[b]);
        }
    }
    return out;
}

DenseKet apply_permutation(const DenseKet &state, const Permutation &pi) {
    if (pi.size() != state.n) {
        throw DomainError("apply_permutation: permutation acts on " + std::to_string(pi.size()) +
                          " qubits, state has " + std::to_string(state.n));
    }
    DenseKet out{state.n, std::vector<cplx>(state.amps.size())};
    for (std::uint64_t a = 0; a < state.amps.size(); ++a) {
        out.amps[permute_bits(a, pi)] = state.amps[a];
    }
    return out;
}

DenseDensity apply_permutation(const DenseDensity &state, const Permutation &pi) {
    if (pi.size() != state.n) {
        throw DomainError("apply_permutation: permutation acts on " + std::to_string(pi.size()) +
                          " qubits, state has " + std::to_string(state.n));
    }
    const std::size_t dim = state.dim();
    std::vector<std::uint64_t> image(dim);
    for (std::uint64_t a = 0; a < dim; ++a) {
        image[a] = permute_bits(a, pi);
    }
    DenseDensity out{state.n, std::vector<cplx>(state.m.size())};
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            out(image[a], image[b]) = state(a, b);
        }
    }
    return out;
}

double symmetry_deviation(const DenseDensity &rho, std::span<const int> positions) {
    std::vector<int> sorted(positions.begin(), positions.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const int p : sorted) {
        require_position(rho.n, p);
    }
    const std::size_t dim = rho.dim();
    double worst = 0.0;
    std::vector<std::uint64_t> image(dim);
    for (std::size_t t = 0; t + 1 < sorted.size(); ++t) {
        const auto pi = Permutation::transposition(rho.n, sorted[t], sorted[t + 1]);
        for (std::uint64_t a = 0; a < dim; ++a) image[a] = permute_bits(a, pi);
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) {
                // (P rho)(pa, b) = rho(a, b) and (rho P^dagger)(a, pb) = rho(a, b).
                worst = std::max(worst, std::abs(rho(a, b) - rho(image[a], b)));
                worst = std::max(worst, std::abs(rho(a, b) - rho(a, image[b])));
            }
        }
    }
    return worst;
}

bool is_symmetric_over(const DenseDensity &rho, std::span<const int> positions, double tol) {
    return symmetry_deviation(rho, positions) <= tol;
}

DenseDensity apply_operator_at(const DenseDensity &rho, int position, const Mat2 &k) {
    require_position(rho.n, position);
    const std::size_t dim = rho.dim();
    const std::uint64_t mask = bit_of(position);
    DenseDensity left{rho.n, std::vector<cplx>(rho.m.size())};
    for (std::size_t r = 0; r < dim; ++r) {
        if (r & mask) continue;
        const std::size_t r1 = r | mask;
        for (std::size_t c = 0; c < dim; ++c) {
            const cplx x0 = rho(r, c);
            const cplx x1 = rho(r1, c);
            left(r, c) = k[0][0] * x0 + k[0][1] * x1;
            left(r1, c) = k[1][0] * x0 + k[1][1] * x1;
        }
    }
    DenseDensity out{rho.n, std::vector<cplx>(rho.m.size())};
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if (c & mask) continue;
            const std::size_t c1 = c | mask;
            const cplx x0 = left(r, c);
            const cplx x1 = left(r, c1);
            out(r, c) = x0 * std::conj(k[0][0]) + x1 * std::conj(k[0][1]);
            out(r, c1) = x0 * std::conj(k[1][0]) + x1 * std::conj(k[1][1]);
        }
    }
    return out;
}

DenseKet apply_operator_at(const DenseKet &ket, int position, const Mat2 &k) {
    require_position(ket.n, position);
    const std::uint64_t mask = bit_of(position);
    DenseKet out{ket.n, std::vector<cplx>(ket.amps.size())};
    for (std::size_t a = 0; a < ket.amps.size(); ++a) {
        if (a & mask) continue;
        const cplx x0 = ket.amps[a];
        const cplx x1 = ket.amps[a | mask];
        out.amps[a] = k[0][0] * x0 + k[0][1] * x1;
        out.amps[a | mask] = k[1][0] * x0 + k[1][1] * x1;
    }
    return out;
}

DenseDensity apply_channel_at(const DenseDensity &rho, int position, std::span<const SingleQubitKraus> kraus) {
    require_complete(kraus);
    DenseDensity out{rho.n, std::vector<cplx>(rho.m.size())};
    for (const auto &k : kraus) {
        const auto term = apply_operator_at(rho, position, k.matrix);
        for (std::size_t i = 0; i < out.m.size(); ++i) {
            out.m[i] += term.m[i];
        }
    }
    return out;
}

std::vector<DenseOutcome> measure_at(const DenseDensity &rho, int position, std::span<const SingleQubitKraus> kraus) {
    require_complete(kraus);
    std::vector<DenseOutcome> out;
    for (const auto &k : kraus) {
        auto s = apply_operator_at(rho, position, k.matrix);
        const double p = s.trace();
        if (p > 0.0) {
            for (auto &x : s.m) x /= p;
        } else {
            std::fill(s.m.begin(), s.m.end(), cplx{});
        }
        out.push_back({k.label, std::max(p, 0.0), std::move(s)});
    }
    return out;
}

DenseDensity partial_trace(const DenseDensity &rho, std::span<const int> positions) {
    std::vector<bool> traced(static_cast<std::size_t>(rho.n) + 1, false);
    for (const int p : positions) {
        require_position(rho.n, p);
        traced[static_cast<std::size_t>(p)] = true;
    }
    std::vector<int> keep;
    std::vector<int> drop;
    for (int j = 1; j <= rho.n; ++j) {
        (traced[static_cast<std::size_t>(j)] ? drop : keep).push_back(j);
    }
    if (drop.empty() || keep.empty()) {
        throw DomainError("partial_trace: positions must be a nonempty proper subset of the qubits");
    }
    const auto scatter = [](std::uint64_t compact, const std::vector<int> &where) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < where.size(); ++i) {
            if (compact & (std::uint64_t{1} << i)) out |= bit_of(where[i]);
        }
        return out;
    };
    DenseDensity out{static_cast<int>(keep.size()), {}};
    const std::size_t dim = out.dim();
    out.m.assign(dim * dim, cplx{});
    const std::size_t tdim = std::size_t{1} << drop.size();
    std::vector<std::uint64_t> kept(dim);
    std::vector<std::uint64_t> dropped(tdim);
    for (std::size_t a = 0; a < dim; ++a) kept[a] = scatter(a, keep);
    for (std::size_t t = 0; t < tdim; ++t) dropped[t] = scatter(t, drop);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            cplx acc{};
            for (std::size_t t = 0; t < tdim; ++t) {
                acc += rho(kept[a] | dropped[t], kept[b] | dropped[t]);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

namespace {

// Dicke-basis matrix elements <mu| rho |nu> of a dense operator.
std::vector<cplx> dicke_block(const DenseDensity &rho) {
    const int n = rho.n;
    const auto d = static_cast<std::size_t>(n) + 1;
    std::vector<cplx> alpha(d * d);
    const std::size_t dim = rho.dim();
    for (std::size_t a = 0; a < dim; ++a) {
        const auto wa = hamming_weight(a);
        for (std::size_t b = 0; b < dim; ++b) {
            alpha[wa * d + hamming_weight(b)] += rho(a, b);
        }
    }
    for (std::size_t mu = 0; mu < d; ++mu) {
        for (std::size_t nu = 0; nu < d; ++nu) {
            alpha[mu * d + nu] /= std::sqrt(binomial(n, static_cast<int>(mu)) * binomial(n, static_cast<int>(nu)));
        }
    }
    return alpha;
}

std::vector<cplx> dicke_components(const DenseKet &ket) {
    std::vector<cplx> psi(static_cast<std::size_t>(ket.n) + 1);
    for (std::uint64_t a = 0; a < ket.amps.size(); ++a) {
        psi[hamming_weight(a)] += ket.amps[a];
    }
    for (int nu = 0; nu <= ket.n; ++nu) {
        psi[static_cast<std::size_t>(nu)] /= std::sqrt(binomial(ket.n, nu));
    }
    return psi;
}

}  // namespace

double symmetric_residual(const DenseDensity &rho) {
    const auto alpha = dicke_block(rho);
    const auto d = static_cast<std::size_t>(rho.n) + 1;
    double inside = 0.0;
    for (std::size_t i = 0; i < d; ++i) inside += alpha[i * d + i].real();
    return rho.trace() - inside;
}

double symmetric_residual(const DenseKet &ket) {
    double total = 0.0;
    for (const auto &a : ket.amps) total += std::norm(a);
    double inside = 0.0;
    for (const auto &c : dicke_components(ket)) inside += std::norm(c);
    return total - inside;
}

SymmetricDensity compress(const DenseDensity &rho, double tol) {
    auto alpha = dicke_block(rho);
    const auto d = static_cast<std::size_t>(rho.n) + 1;
    double inside = 0.0;
    for (std::size_t i = 0; i < d; ++i) inside += alpha[i * d + i].real();
    const double residual = rho.trace() - inside;
    if (!(std::abs(residual) <= tol)) {
        throw NotSymmetricError("compress: weight outside the symmetric subspace is " + std::to_string(residual),
                                residual);
    }
    return SymmetricDensity::normalized(rho.n, std::move(alpha));
}

SymmetricKet compress(const DenseKet &ket, double tol) {
    auto psi = dicke_components(ket);
    double total = 0.0;
    for (const auto &a : ket.amps) total += std::norm(a);
    double inside = 0.0;
    for (const auto &c : psi) inside += std::norm(c);
    const double residual = total - inside;
    if (!(std::abs(residual) <= tol)) {
        throw NotSymmetricError("compress: weight outside the symmetric subspace is " + std::to_string(residual),
                                residual);
    }
    return SymmetricKet::normalized(std::move(psi));
}

DenseKet kron(const DenseKet &high, const DenseKet &low) {
    DenseKet out{high.n + low.n, std::vector<cplx>(high.amps.size() * low.amps.size())};
    for (std::size_t h = 0; h < high.amps.size(); ++h) {
        for (std::size_t l = 0; l < low.amps.size(); ++l) {
            out.amps[(h << low.n) | l] = high.amps[h] * low.amps[l];
        }
    }
    return out;
}

cplx split_inner_product(int n, int nu, int k, int mu) {
    if (k < 0 || k > n || nu < 0 || nu > n || mu < 0 || mu > k) {
        throw DomainError("split_inner_product: index out of range");
    }
    require_ket_cap(n);
    if (nu - mu < 0 || nu - mu > n - k) {
        return 0.0;
    }
    const auto bra = kron(dicke_vector(n - k, nu - mu), dicke_vector(k, mu));
    const auto ket = dicke_vector(n, nu);
    cplx acc{};
    for (std::size_t a = 0; a < ket.amps.size(); ++a) {
        acc += std::conj(bra.amps[a]) * ket.amps[a];
    }
    return acc;
}

DenseKet insert_qubit(const DenseKet &rest, int position, const std::array<cplx, 2> &qubit) {
    require_position(rest.n + 1, position);
    DenseKet out{rest.n + 1, std::vector<cplx>(rest.amps.size() * 2)};
    const std::uint64_t low_mask = bit_of(position) - 1;
    for (std::uint64_t r = 0; r < rest.amps.size(); ++r) {
        const std::uint64_t base = (r & low_mask) | ((r & ~low_mask) << 1);
        out.amps[base] = rest.amps[r] * qubit[0];
        out.amps[base | bit_of(position)] = rest.amps[r] * qubit[1];
    }
    return out;
}

double fidelity(const DenseKet &a, const DenseKet &b) {
    cplx overlap{};
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        overlap += std::conj(a.amps[i]) * b.amps[i];
        na += std::norm(a.amps[i]);
        nb += std::norm(b.amps[i]);
    }
    return std::norm(overlap) / (na * nb);
}

double fidelity(const DenseDensity &rho, const DenseKet &psi) {
    const std::size_t dim = rho.dim();
    cplx acc{};
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            acc += std::conj(psi.amps[a]) * rho(a, b) * psi.amps[b];
        }
    }
    return acc.real();
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

}  // namespace dicke::dense
