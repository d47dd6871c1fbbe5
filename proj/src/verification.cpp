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

#include "dicke/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "dicke/dense_oracle.hpp"
#include "dicke/errors.hpp"
#include "dicke/harness.hpp"
#include "dicke/random_states.hpp"

namespace dicke::verify {

namespace {

using dense::DenseDensity;
using dense::DenseKet;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Acc {
    int trials = 0;
    double worst = 0.0;

    void add(double r) {
        worst = std::isnan(r) ? kInf : std::max(worst, r);
    }
    void count() {
        ++trials;
    }
    PropertyResult finish(std::string name, double tol, std::string detail = {}) const {
        PropertyResult r;
        r.name = std::move(name);
        r.trials = trials;
        r.worst_residual = worst;
        r.tolerance = tol;
        r.passed = trials > 0 && worst <= tol;
        r.detail = std::move(detail);
        return r;
    }
};

Rng rng_for(const Params &p, std::uint32_t tag, int n, int seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(p.base_seed), static_cast<std::uint32_t>(p.base_seed >> 32), tag,
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(seed)};
    return Rng(seq);
}

int dense_limit(const Params &p, int hard) {
    return std::min({p.max_n, hard, dense::dense_cap().density});
}

double binom(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
    return dense::max_abs_diff(a, b);
}

double norm2(const DenseKet &k) {
    double s = 0.0;
    for (const auto &a : k.amps) s += std::norm(a);
    return s;
}

// One measurement in a random sequence: either a PVM or a general Kraus set.
struct Step {
    bool is_pvm;
    SingleQubitPVM pvm;
    KrausSet kraus;
};

Step random_step(Rng &rng, bool pvm_only) {
    if (pvm_only || rng() % 2 == 0) {
        auto pvm = random_pvm(rng);
        auto k = pvm.kraus();
        return {true, pvm, std::move(k)};
    }
    return {false, computational_pvm(), random_kraus_set(random_int(2, 3, rng), rng)};
}

// Samples an outcome index with probability above the conditioning threshold.
std::size_t pick(const std::vector<double> &probs, Rng &rng) {
    std::vector<double> usable(probs);
    for (auto &x : usable) {
        if (x < kZeroProbability) x = 0.0;
    }
    return sample_index(usable, rng);
}

template <class Outcomes>
std::vector<double> probs_of(const Outcomes &o) {
    std::vector<double> p;
    for (const auto &x : o) p.push_back(x.probability);
    return p;
}

double completeness_defect(const std::vector<double> &p) {
    double s = 0.0;
    for (const double x : p) s += x;
    return std::abs(s - 1.0);
}

// Compact state that starts pure and switches to a density when needed.
class CompactRun {
   public:
    explicit CompactRun(const SymmetricKet &k) : state_(k) {
    }
    explicit CompactRun(const SymmetricDensity &r) : state_(r) {
    }

    std::vector<double> probabilities(const Step &s) const {
        if (const auto *k = std::get_if<SymmetricKet>(&state_); k && s.is_pvm) {
            return probs_of(measure_pure(*k, s.pvm));
        }
        return probs_of(measure_mixed(as_density(), s.kraus));
    }
    void condition(const Step &s, std::size_t idx) {
        if (const auto *k = std::get_if<SymmetricKet>(&state_); k && s.is_pvm) {
            state_ = measure_pure(*k, s.pvm)[idx].conditional_state();
        } else {
            state_ = measure_mixed(as_density(), s.kraus)[idx].conditional_state();
        }
    }
    void lose() {
        state_ = lose_qubit(as_density());
    }
    SymmetricDensity as_density() const {
        if (const auto *k = std::get_if<SymmetricKet>(&state_)) return to_density(*k);
        return std::get<SymmetricDensity>(state_);
    }

   private:
    CompactState state_;
};

// Dense density whose qubits are addressed by their original positions while
// some of them are traced out along the way.
class DenseRun {
   public:
    explicit DenseRun(DenseDensity rho) : rho_(std::move(rho)) {
        for (int j = 1; j <= rho_.n; ++j) alive_.push_back(j);
    }
    // Applies K_idx at the original position; returns the conditional probability.
    double measure(int original, const KrausSet &k, std::size_t idx) {
        const double before = rho_.trace();
        rho_ = dense::apply_operator_at(rho_, current(original), k[idx].matrix);
        return rho_.trace() / before;
    }
    void lose(int original) {
        const int cur = current(original);
        if (rho_.n == 1) {
            // A fully traced state carries only its weight.
            weight_only_ = rho_.trace();
            alive_.clear();
            return;
        }
        const int pos[] = {cur};
        rho_ = dense::partial_trace(rho_, pos);
        alive_.erase(alive_.begin() + (cur - 1));
    }

   private:
    int current(int original) const {
        const auto it = std::find(alive_.begin(), alive_.end(), original);
        if (it == alive_.end()) throw DomainError("DenseRun: qubit already gone");
        return static_cast<int>(it - alive_.begin()) + 1;
    }
    DenseDensity rho_;
    std::vector<int> alive_;
    double weight_only_ = 0.0;
};

DenseKet dense_random_ket(int n, Rng &rng) {
    DenseKet k{n, std::vector<cplx>(std::size_t{1} << n)};
    for (auto &a : k.amps) a = random_gaussian(rng);
    return k;
}

}  // namespace

std::vector<cplx> pvm_update_reference(const SymmetricDensity &rho, const SingleQubitPVM &pvm, int label) {
    const int n = rho.n();
    const auto &kp = pvm.kappa()[static_cast<std::size_t>(label)];
    const double dn = n;
    std::vector<cplx> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int nu = 0; nu < n; ++nu) {
        for (int mu = 0; mu < n; ++mu) {
            const cplx v = rho(nu, mu) * std::sqrt((dn - nu) * (dn - mu)) * kp[0] * std::conj(kp[0]) +
                           rho(nu, mu + 1) * std::sqrt((dn - nu) * (mu + 1.0)) * kp[0] * std::conj(kp[1]) +
                           rho(nu + 1, mu) * std::sqrt((nu + 1.0) * (dn - mu)) * kp[1] * std::conj(kp[0]) +
                           rho(nu + 1, mu + 1) * std::sqrt((nu + 1.0) * (mu + 1.0)) * kp[1] * std::conj(kp[1]);
            out[static_cast<std::size_t>(nu * n + mu)] = v / dn;
        }
    }
    return out;
}

PropertyResult xi_completeness(int max_n) {
    Acc acc;
    const int top = std::max(30, max_n);
    for (int n = 0; n <= top; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int nu = 0; nu <= n; ++nu) {
                double sum = 0.0;
                for (int mu = 0; mu <= k; ++mu) {
                    const double xi = xi_coefficient(k, n, mu, nu);
                    const bool in_support = mu <= nu && nu - mu <= n - k;
                    if (!in_support && xi != 0.0) acc.add(kInf);
                    if (in_support && !(xi > 0.0 && xi <= 1.0)) acc.add(kInf);
                    sum += xi * xi;
                }
                acc.add(std::abs(sum - 1.0));
                acc.count();
            }
        }
    }
    return acc.finish("xi_completeness", 1e-12, "sum of squared split coefficients and support, n <= 30");
}

PropertyResult xi_oracle(const Params &p, bool corrupt) {
    Acc acc;
    const int top = std::min(p.max_n, dense::dense_cap().ket);
    bool corrupted = false;
    for (int n = 1; n <= top; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int nu = 0; nu <= n; ++nu) {
                auto split = general_split(n, nu, k);
                if (corrupt && !corrupted && n == top && !split.empty()) {
                    split.front().value = -split.front().value;
                    corrupted = true;
                }
                double sum = 0.0;
                for (const auto &c : split) {
                    const cplx ref = dense::split_inner_product(n, nu, k, c.mu);
                    acc.add(std::abs(c.value - ref));
                    sum += c.value * c.value;
                }
                acc.add(std::abs(sum - 1.0));
                acc.count();
            }
        }
    }
    return acc.finish("xi_oracle", p.tolerance, "general_split against dense bipartite inner products");
}

PropertyResult split_reconstruction(const Params &p) {
    Acc acc;
    for (int n = 1; n <= std::min({p.max_n, 12, dense::dense_cap().ket}); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 1, n, s);
            const auto ket = random_ket(n, rng);
            const auto br = split_last_qubit(ket);
            const auto full = dense::expand(ket);
            std::vector<cplx> rebuilt(full.amps.size());
            for (std::uint64_t a = 0; a < rebuilt.size(); ++a) {
                const auto rest = a >> 1;
                const auto w = dense::hamming_weight(rest);
                const auto &c = (a & 1) ? br.c1 : br.c0;
                rebuilt[a] = c[w] / std::sqrt(binom(n - 1, static_cast<int>(w)));
            }
            acc.add(max_diff(rebuilt, full.amps));
            acc.count();
        }
        for (int nu = 0; nu <= n; ++nu) {
            const auto br = split_last_qubit(basis_state(n, nu));
            const auto split = general_split(n, nu, 1);
            std::vector<cplx> c0(static_cast<std::size_t>(n)), c1(static_cast<std::size_t>(n));
            for (const auto &c : split) {
                if (c.mu == 0) c0[static_cast<std::size_t>(nu)] = c.value;
                if (c.mu == 1) c1[static_cast<std::size_t>(nu - 1)] = c.value;
            }
            acc.add(std::max(max_diff(c0, br.c0), max_diff(c1, br.c1)));
            acc.count();
        }
    }
    return acc.finish("split_reconstruction", 1e-12, "single-qubit split against dense expansion");
}

PropertyResult permutation_representation(const Params &p) {
    Acc acc;
    for (int n = 1; n <= std::min({p.max_n, 10, dense::dense_cap().ket}); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 2, n, s);
            const dense::Permutation a(random_positions(n, n, rng));
            const dense::Permutation b(random_positions(n, n, rng));
            const auto psi = dense_random_ket(n, rng);
            const auto lhs = dense::apply_permutation(psi, a.compose(b));
            const auto rhs = dense::apply_permutation(dense::apply_permutation(psi, b), a);
            acc.add(max_diff(lhs.amps, rhs.amps));
            const auto back = dense::apply_permutation(dense::apply_permutation(psi, a), a.inverse());
            acc.add(max_diff(back.amps, psi.amps));
            acc.add(std::abs(norm2(lhs) / norm2(psi) - 1.0));
            const auto sym = dense::expand(random_ket(n, rng));
            acc.add(max_diff(dense::apply_permutation(sym, a).amps, sym.amps));
            acc.count();
        }
    }
    return acc.finish("permutation_representation", 1e-12, "group law, inverse, Dicke invariance");
}

PropertyResult basis_characterization_forward(const Params &p) {
    Acc acc;
    for (int n = 1; n <= dense_limit(p, 8); ++n) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j + 1;
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 3, n, s);
            const auto rho = random_density(n, random_int(1, n + 1, rng), rng);
            acc.add(dense::symmetry_deviation(dense::expand(rho), all));
            acc.count();
        }
    }
    return acc.finish("basis_characterization_forward", 1e-12, "symmetric-subspace states pass the permutation check");
}

PropertyResult basis_characterization_reverse(const Params &p) {
    Acc acc;
    for (int n = 1; n <= dense_limit(p, 8); ++n) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j + 1;
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 4, n, s);
            const auto rho = random_density(n, random_int(1, n + 1, rng), rng);
            const auto d = dense::expand(rho);
            if (!dense::is_symmetric_over(d, all, 1e-12)) acc.add(kInf);
            try {
                const auto back = dense::compress(d, p.tolerance);
                acc.add(std::abs(dense::symmetric_residual(d)));
                acc.add(max_diff(back.data(), rho.data()));
            } catch (const NotSymmetricError &e) {
                acc.add(std::max(kInf, e.residual()));
            }
            acc.count();
        }
    }
    return acc.finish("basis_characterization_reverse", p.tolerance,
                      "states passing the permutation check compress with negligible residual");
}

PropertyResult non_symmetric_rejection(const Params &p) {
    PropertyResult r;
    r.name = "non_symmetric_rejection";
    r.tolerance = 1e-6;
    r.lower_bound = true;
    r.worst_residual = kInf;
    r.detail = "random non-symmetric densities fail compression";
    bool all_rejected = true;
    for (int n = 2; n <= dense_limit(p, 8); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 5, n, s);
            const auto d = random_dense_density(n, random_int(1, 4, rng), rng);
            ++r.trials;
            try {
                (void)dense::compress(d, p.tolerance);
                all_rejected = false;
                r.worst_residual = std::min(r.worst_residual, dense::symmetric_residual(d));
            } catch (const NotSymmetricError &e) {
                r.worst_residual = std::min(r.worst_residual, e.residual());
            }
        }
    }
    r.passed = r.trials > 0 && all_rejected && r.worst_residual > r.tolerance;
    return r;
}

PropertyResult residual_symmetry(const Params &p) {
    Acc acc;
    for (int n = 2; n <= dense_limit(p, 8); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 6, n, s);
            auto rho = dense::expand(random_density(n, random_int(1, n + 1, rng), rng));
            const int touched = random_int(1, n - 1, rng);
            const auto order = random_positions(n, n, rng);
            const std::vector<int> subset(order.begin(), order.begin() + touched);
            const std::vector<int> rest(order.begin() + touched, order.end());
            for (const int pos : subset) {
                const auto k = random_kraus_set(random_int(1, 4, rng), rng);
                if (rng() % 2 == 0) {
                    rho = dense::apply_channel_at(rho, pos, k);
                } else {
                    rho = dense::apply_operator_at(rho, pos, k[rng() % k.size()].matrix);
                    const double tr = rho.trace();
                    for (auto &x : rho.m) x /= tr;
                }
            }
            acc.add(dense::symmetry_deviation(rho, rest));
            // The untouched qubits alone form a symmetric state.
            try {
                const auto reduced = dense::partial_trace(rho, subset);
                acc.add(std::abs(dense::symmetric_residual(reduced)));
                (void)dense::compress(reduced, p.tolerance);
            } catch (const NotSymmetricError &e) {
                acc.add(std::max(e.residual(), kInf));
            }
            acc.count();
        }
    }
    return acc.finish("residual_symmetry", p.tolerance,
                      "after Kraus maps on a subset, the complement stays symmetric and compresses");
}

PropertyResult loss_mechanism_irrelevance(const Params &p) {
    Acc acc;
    for (int n = 2; n <= dense_limit(p, 8); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 7, n, s);
            const auto compact = random_density(n, random_int(1, n + 1, rng), rng);
            const auto rho = (s % 2 == 0) ? dense::expand(compact) : random_dense_density(n, 3, rng);
            const int j = random_int(1, n, rng);
            const int pos[] = {j};
            const auto k = random_kraus_set(random_int(1, 4, rng), rng);
            const auto plain = dense::partial_trace(rho, pos);
            const auto mangled = dense::partial_trace(dense::apply_channel_at(rho, j, k), pos);
            acc.add(max_diff(plain.m, mangled.m));
            if (s % 2 == 0) {
                acc.add(max_diff(dense::expand(lose_qubit(compact)).m, plain.m));
            }
            acc.count();
        }
    }
    return acc.finish("loss_mechanism_irrelevance", 1e-12,
                      "a channel on the lost qubit does not change the reduced state");
}

PropertyResult trace_measure_commutation(const Params &p) {
    Acc acc;
    for (int n = 2; n <= dense_limit(p, 10); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 8, n, s);
            const auto rho = random_density(n, random_int(1, n + 1, rng), rng);
            const auto k = random_kraus_set(random_int(2, 3, rng), rng);
            const auto measured_first = measure_mixed(rho, k);
            const auto lost_first = measure_mixed(lose_qubit(rho), k);
            for (std::size_t l = 0; l < k.size(); ++l) {
                acc.add(std::abs(measured_first[l].probability - lost_first[l].probability));
                if (measured_first[l].post_state && lost_first[l].post_state && n >= 2) {
                    const auto a = lose_qubit(*measured_first[l].post_state);
                    acc.add(max_diff(a.data(), lost_first[l].post_state->data()));
                }
            }
            // Dense: measure at i then trace j, versus trace j then measure at i.
            if (n <= std::min(p.max_n, 8) || s < std::max(1, p.seeds / 5)) {
                const auto d = dense::expand(rho);
                const auto ij = random_positions(n, 2, rng);
                const int i = ij[0];
                const int j = ij[1];
                const int traced[] = {j};
                const auto after = dense::measure_at(d, i, k);
                const auto reduced = dense::partial_trace(d, traced);
                const auto before = dense::measure_at(reduced, i < j ? i : i - 1, k);
                for (std::size_t l = 0; l < k.size(); ++l) {
                    acc.add(std::abs(after[l].probability - before[l].probability));
                    acc.add(std::abs(after[l].probability - measured_first[l].probability));
                    if (after[l].probability > 1e-8) {
                        acc.add(max_diff(dense::partial_trace(after[l].state, traced).m, before[l].state.m));
                    }
                }
            }
            acc.count();
        }
    }
    return acc.finish("trace_measure_commutation", p.tolerance,
                      "measure-then-lose equals lose-then-measure (compact and dense)");
}

PropertyResult ordering_independence(const Params &p) {
    Acc acc;
    for (int n = 1; n <= std::min({p.max_n, 10, dense::dense_cap().ket}); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 9, n, s);
            const auto ket = random_ket(n, rng);
            const int m = random_int(1, n, rng);
            const bool pvm_only = s % 2 == 0;
            std::vector<Step> steps;
            for (int i = 0; i < m; ++i) steps.push_back(random_step(rng, pvm_only));
            const auto pos_a = random_positions(n, m, rng);
            const auto pos_b = random_positions(n, m, rng);

            CompactRun compact(ket);
            CompactRun compact_mixed(to_density(ket));
            auto dense_a = dense::expand(ket);
            auto dense_b = dense_a;
            double joint_compact = 1.0;
            double joint_a = 1.0;
            double joint_b = 1.0;
            for (int i = 0; i < m; ++i) {
                const auto &st = steps[static_cast<std::size_t>(i)];
                const auto probs = compact.probabilities(st);
                acc.add(completeness_defect(probs));
                const auto idx = pick(probs, rng);
                if (pvm_only) {
                    const auto mixed = compact_mixed.probabilities(st);
                    acc.add(std::abs(mixed[idx] - probs[idx]));
                    compact_mixed.condition(st, idx);
                }
                const double na = norm2(dense_a);
                const double nb = norm2(dense_b);
                dense_a = dense::apply_operator_at(dense_a, pos_a[static_cast<std::size_t>(i)], st.kraus[idx].matrix);
                dense_b = dense::apply_operator_at(dense_b, pos_b[static_cast<std::size_t>(i)], st.kraus[idx].matrix);
                const double pa = norm2(dense_a) / na;
                const double pb = norm2(dense_b) / nb;
                acc.add(std::abs(pa - probs[idx]));
                acc.add(std::abs(pb - probs[idx]));
                joint_compact *= probs[idx];
                joint_a *= pa;
                joint_b *= pb;
                compact.condition(st, idx);
            }
            acc.add(std::abs(joint_compact - norm2(dense_a)));
            acc.add(std::abs(joint_a - joint_b));
            acc.count();
        }
    }
    return acc.finish("ordering_independence", p.tolerance,
                      "sequential PVM/POVM probabilities at arbitrary injective positions");
}

PropertyResult mixed_ordering_independence(const Params &p) {
    Acc acc;
    for (int n = 1; n <= dense_limit(p, 8); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 10, n, s);
            const auto rho = random_density(n, random_int(1, n + 1, rng), rng);
            const int m = random_int(1, n, rng);
            const auto pos = random_positions(n, m, rng);
            CompactRun compact(rho);
            DenseRun oracle(dense::expand(rho));
            for (int i = 0; i < m; ++i) {
                const auto st = random_step(rng, false);
                const auto probs = compact.probabilities(st);
                acc.add(completeness_defect(probs));
                const auto idx = pick(probs, rng);
                acc.add(std::abs(oracle.measure(pos[static_cast<std::size_t>(i)], st.kraus, idx) - probs[idx]));
                compact.condition(st, idx);
            }
            acc.count();
        }
    }
    return acc.finish("mixed_ordering_independence", p.tolerance, "sequential Kraus measurements on mixed inputs");
}

PropertyResult loss_independence(const Params &p) {
    Acc acc;
    for (int n = 2; n <= dense_limit(p, 10); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 11, n, s);
            const auto rho = random_density(n, random_int(1, n + 1, rng), rng);
            const auto k = random_kraus_set(random_int(2, 3, rng), rng);
            const int losses = random_int(1, n - 1, rng);
            auto reduced = rho;
            for (int i = 0; i < losses; ++i) reduced = lose_qubit(reduced);
            const auto base = probs_of(measure_mixed(rho, k));
            const auto after = probs_of(measure_mixed(reduced, k));
            for (std::size_t l = 0; l < k.size(); ++l) acc.add(std::abs(base[l] - after[l]));
            if (n <= std::min(p.max_n, 8) || s < std::max(1, p.seeds / 5)) {
                const auto order = random_positions(n, n, rng);
                const std::vector<int> lost(order.begin(), order.begin() + losses);
                const int survivor = order[static_cast<std::size_t>(losses)];
                DenseRun run(dense::expand(rho));
                for (const int q : lost) run.lose(q);
                for (std::size_t l = 0; l < k.size(); ++l) {
                    DenseRun trial = run;
                    acc.add(std::abs(trial.measure(survivor, k, l) - base[l]));
                }
            }
            acc.count();
        }
    }
    return acc.finish("loss_independence", p.tolerance,
                      "probabilities after losing unmeasured qubits equal the lossless ones");
}

PropertyResult loss_postponement(const Params &p) {
    Acc acc;
    for (int n = 1; n <= dense_limit(p, 10); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 12, n, s);
            const bool pvm_run = s % 2 == 0;
            const auto ket = random_ket(n, rng);
            const int m = random_int(1, n, rng);
            const int fresh_losses = random_int(0, n - m, rng);
            // Event list: +k = measure qubit k, -k = lose qubit k (original positions).
            const auto positions = random_positions(n, m + fresh_losses, rng);
            std::vector<int> events;
            for (int i = 0; i < m; ++i) events.push_back(positions[static_cast<std::size_t>(i)]);
            for (int i = 0; i < fresh_losses; ++i) events.push_back(-positions[static_cast<std::size_t>(m + i)]);
            for (int i = static_cast<int>(events.size()) - 1; i > 0; --i) {
                std::swap(events[static_cast<std::size_t>(i)], events[static_cast<std::size_t>(random_int(0, i, rng))]);
            }
            if (pvm_run) {
                // Measured qubits may be lost at any later time.
                for (int i = 0; i < m; ++i) {
                    if (rng() % 2 != 0) continue;
                    const int q = positions[static_cast<std::size_t>(i)];
                    const auto at = std::find(events.begin(), events.end(), q) - events.begin();
                    const int slot = random_int(static_cast<int>(at) + 1, static_cast<int>(events.size()), rng);
                    events.insert(events.begin() + slot, -q);
                }
            }
            std::vector<bool> measured(static_cast<std::size_t>(n) + 1, false);
            CompactRun lossy(ket);
            CompactRun lossless(ket);
            DenseRun oracle(dense::to_density(dense::expand(ket)));
            for (const int e : events) {
                if (e < 0) {
                    if (!measured[static_cast<std::size_t>(-e)]) lossy.lose();
                    oracle.lose(-e);
                    continue;
                }
                const auto st = random_step(rng, pvm_run);
                const auto probs = lossy.probabilities(st);
                const auto reference = lossless.probabilities(st);
                const auto idx = pick(probs, rng);
                for (std::size_t l = 0; l < probs.size(); ++l) acc.add(std::abs(probs[l] - reference[l]));
                acc.add(std::abs(oracle.measure(e, st.kraus, idx) - reference[idx]));
                lossy.condition(st, idx);
                lossless.condition(st, idx);
                measured[static_cast<std::size_t>(e)] = true;
            }
            acc.count();
        }
    }
    return acc.finish("loss_postponement", p.tolerance,
                      "interleaved losses leave every outcome probability unchanged");
}

PropertyResult pvm_update_formula(const Params &p) {
    Acc acc;
    for (int n = 1; n <= p.max_n; ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 13, n, s);
            const auto rho = random_density(n, random_int(1, n + 1, rng), rng);
            const auto pvm = random_pvm(rng);
            const auto out = measure_mixed(rho, pvm);
            for (int l = 0; l < 2; ++l) {
                const auto ref = pvm_update_reference(rho, pvm, l);
                double tr = 0.0;
                for (int i = 0; i < n; ++i) tr += ref[static_cast<std::size_t>(i * n + i)].real();
                const auto &o = out[static_cast<std::size_t>(l)];
                acc.add(std::abs(tr - o.probability));
                if (o.post_state) {
                    std::vector<cplx> scaled(o.post_state->data().begin(), o.post_state->data().end());
                    for (auto &x : scaled) x *= o.probability;
                    acc.add(max_diff(scaled, ref));
                }
            }
            acc.count();
        }
    }
    return acc.finish("pvm_update_formula", p.tolerance, "mixed-state PVM update coefficient by coefficient");
}

PropertyResult pure_state_sufficiency(const Params &p) {
    Acc acc;
    for (int n = 1; n <= std::min({p.max_n, 10, dense::dense_cap().ket}); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 14, n, s);
            auto ket = random_ket(n, rng);
            // Cascade through every qubit, checking the product structure at each step.
            for (int remaining = n; remaining >= 1; --remaining) {
                const auto pvm = random_pvm(rng);
                const int pos = random_int(1, remaining, rng);
                const auto outcomes = measure_pure(ket, pvm);
                const auto full = dense::expand(ket);
                for (int l = 0; l < 2; ++l) {
                    const auto &o = outcomes[static_cast<std::size_t>(l)];
                    const auto post = dense::apply_operator_at(full, pos, pvm.kraus()[static_cast<std::size_t>(l)].matrix);
                    const double prob = norm2(post);
                    acc.add(std::abs(prob - o.probability));
                    if (!o.post_state) continue;
                    DenseKet rest = remaining > 1 ? dense::expand(*o.post_state) : DenseKet{0, {(*o.post_state)[0]}};
                    const auto product = dense::insert_qubit(rest, pos, pvm.basis_vector(l));
                    acc.add(1.0 - dense::fidelity(post, product));
                }
                ket = outcomes[pick(probs_of(outcomes), rng)].conditional_state();
            }
            acc.count();
        }
    }
    return acc.finish("pure_state_sufficiency", p.tolerance,
                      "dense post-measurement state equals |l'> times the compact post-state");
}

PropertyResult channel_detector_composition(const Params &p) {
    Acc acc;
    for (int n = 1; n <= std::min({p.max_n, 10, dense::dense_cap().ket}); ++n) {
        for (int s = 0; s < p.seeds; ++s) {
            auto rng = rng_for(p, 15, n, s);
            auto ket = random_ket(n, rng);
            const PhaseChannel channel{2.0 * std::numbers::pi * uniform01(rng)};
            auto full = dense::expand(ket);
            const auto pos = random_positions(n, n, rng);
            for (int i = 0; i < n; ++i) {
                const DetectorSetting det{std::acos(1.0 - 2.0 * uniform01(rng)), 2.0 * std::numbers::pi * uniform01(rng)};
                const auto outcomes = measure_pure(ket, combined_pvm(channel, det.pvm()));
                const auto idx = pick(probs_of(outcomes), rng);
                const double before = norm2(full);
                full = dense::apply_operator_at(full, pos[static_cast<std::size_t>(i)], channel.unitary());
                full = dense::apply_operator_at(full, pos[static_cast<std::size_t>(i)], det.pvm().kraus()[idx].matrix);
                acc.add(std::abs(norm2(full) / before - outcomes[idx].probability));
                ket = outcomes[idx].conditional_state();
            }
            acc.count();
        }
    }
    return acc.finish("channel_detector_composition", p.tolerance,
                      "combined PVM equals channel followed by detector");
}

std::vector<PropertyResult> run_suite(const SuiteOptions &options) {
    const auto &p = options.params;
    if (p.max_n > dense::dense_cap().density) {
        throw ResourceLimitError("verify: max_n " + std::to_string(p.max_n) + " exceeds the dense cap of " +
                                 std::to_string(dense::dense_cap().density));
    }
    if (p.max_n < 1 || p.seeds < 1) {
        throw DomainError("verify: max_n and seeds must be positive");
    }
    const std::vector<std::function<PropertyResult()>> tasks = {
        [&] { return xi_completeness(p.max_n); },
        [&] { return xi_oracle(p, options.corrupt_xi); },
        [&] { return split_reconstruction(p); },
        [&] { return permutation_representation(p); },
        [&] { return basis_characterization_forward(p); },
        [&] { return basis_characterization_reverse(p); },
        [&] { return non_symmetric_rejection(p); },
        [&] { return residual_symmetry(p); },
        [&] { return loss_mechanism_irrelevance(p); },
        [&] { return trace_measure_commutation(p); },
        [&] { return ordering_independence(p); },
        [&] { return mixed_ordering_independence(p); },
        [&] { return loss_independence(p); },
        [&] { return loss_postponement(p); },
        [&] { return pvm_update_formula(p); },
        [&] { return pure_state_sufficiency(p); },
        [&] { return channel_detector_composition(p); },
    };
    std::vector<PropertyResult> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                results[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n_workers = static_cast<std::size_t>(std::clamp(options.workers, 1, static_cast<int>(tasks.size())));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(work);
        work();
    }
    for (const auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace dicke::verify
