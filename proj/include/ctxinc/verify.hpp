// Copyright 2026 The ctxinc Authors
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

// Seeded randomized property suites. Each suite reports the worst violation
// of its property over all trials; a suite passes when that stays within its
// tolerance. Trial t of a suite draws everything from derive_seed(seed, suite,
// t), so results depend only on (seed, trials).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/info.hpp"
#include "ctxinc/instruments.hpp"
#include "ctxinc/ipc.hpp"
#include "ctxinc/sampling.hpp"
#include "ctxinc/scenarios.hpp"

namespace ctxinc {

struct SuiteResult {
    std::string name;
    std::size_t trials;
    double max_violation;
    double tolerance;
    bool passed;
};

namespace detail {

/// One of four instrument families implementing a random POVM on dimension d.
inline Instrument sample_instrument(std::size_t d, std::uint64_t seed) {
    const std::size_t n = 2 + seed % 2;
    const Observable obs = random_povm(d, n, derive_seed(seed, 11, 0));
    switch (seed % 4) {
        case 0: return luders_instrument(obs);
        case 1: return parent_instrument(obs);
        case 2: return depolarizing_instrument(obs, random_density(d, 1 + seed / 4 % d, derive_seed(seed, 12, 0)));
        default: return post_process(random_channel(d * n, d, 2, derive_seed(seed, 13, 0)), parent_instrument(obs));
    }
}

inline SuiteResult finish(std::string name, std::size_t trials, double worst, double tolerance) {
    return {std::move(name), trials, worst, tolerance, worst <= tolerance};
}

}  // namespace detail

/// leak >= 0 for random (state, Alice instrument, Eve instrument), d in {2, 3}.
inline SuiteResult verify_non_negativity(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 1, t);
        const std::size_t d = 2 + t % 2;
        const DensityMatrix rho = random_density(d, 1 + s % d, derive_seed(s, 1, 0));
        const Instrument a = detail::sample_instrument(d, derive_seed(s, 2, 0));
        const Instrument b = detail::sample_instrument(a.out_dim(), derive_seed(s, 3, 0));
        worst = std::max(worst, -leak(rho, a, b).leak);
    }
    return detail::finish("non-negativity", trials, worst, 1e-9);
}

/// chi(Lambda(E)) <= chi(E) for random ensembles and channels.
inline SuiteResult verify_data_processing(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 2, t);
        const std::size_t d = 2 + t % 2;
        const Ensemble e = random_ensemble(d, 2 + s % 3, derive_seed(s, 1, 0));
        const Channel c = random_channel(d, 2 + (s >> 3) % 2, 1 + (s >> 5) % 3, derive_seed(s, 2, 0));
        worst = std::max(worst, holevo_chi(transform(e, c)) - holevo_chi(e));
    }
    return detail::finish("data-processing", trials, worst, 1e-9);
}

/// 0 <= chi <= min(ln d, H(p)).
inline SuiteResult verify_holevo_bounds(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 3, t);
        const std::size_t d = 2 + t % 3;
        const Ensemble e = random_ensemble(d, 2 + s % 4, derive_seed(s, 1, 0));
        std::vector<double> p;
        for (const auto &m : e.members()) p.push_back(m.probability);
        const double chi = holevo_chi(e);
        const double bound = std::min(std::log(static_cast<double>(d)), shannon_entropy(p));
        worst = std::max({worst, -chi, chi - bound});
    }
    return detail::finish("holevo-bounds", trials, worst, 1e-9);
}

/// S(sum p rho) >= sum p S(rho) and S(sum p rho) <= H(p) + sum p S(rho).
inline SuiteResult verify_concavity(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 4, t);
        const Ensemble e = random_ensemble(2 + t % 3, 2 + s % 3, derive_seed(s, 1, 0));
        double mean = 0.0;
        std::vector<double> p;
        for (const auto &m : e.members()) {
            mean += m.probability * entropy(m.state);
            p.push_back(m.probability);
        }
        const double s_avg = entropy(e.average());
        worst = std::max({worst, mean - s_avg, s_avg - mean - shannon_entropy(p)});
    }
    return detail::finish("concavity", trials, worst, 1e-9);
}

/// Modified IPC against the entropy form for sharp rank-one X, Y (d = 2, 3).
inline SuiteResult verify_sharp_relation(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 5, t);
        const std::size_t d = 2 + t % 2;
        const DensityMatrix rho = random_density(d, 1 + s % d, derive_seed(s, 1, 0));
        worst = std::max(worst, sharp_relation_residual(rho, random_rank_one_pvm(d, derive_seed(s, 2, 0)),
                                                        random_rank_one_pvm(d, derive_seed(s, 3, 0))));
    }
    return detail::finish("sharp-relation", trials, worst, 1e-9);
}

/// ||V^dagger V - I||, ||V^dagger Ahat V - A|| and |Tr Phi_x(rho) - Tr rho A(x)|
/// for parent instruments of random POVMs.
inline SuiteResult verify_naimark(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 6, t);
        const std::size_t d = 2 + t % 3;
        const Observable obs = random_povm(d, 2 + s % 3, derive_seed(s, 1, 0));
        const auto ext = naimark_extension(obs);
        worst = std::max(worst, max_abs_diff(dagger(ext.isometry) * ext.isometry, ComplexMatrix::identity(d)));
        const Instrument parent = parent_instrument(obs, {true});
        const DensityMatrix rho = random_density(d, 1 + s % d, derive_seed(s, 2, 0));
        for (std::size_t x = 0; x < obs.size(); ++x) {
            const ComplexMatrix back = dagger(ext.isometry) * ext.pvm.effects()[x] * ext.isometry;
            worst = std::max(worst, max_abs_diff(back, obs.effects()[x]));
            const double lhs = trace(parent.branches()[x].apply(rho.matrix())).real();
            const double rhs = trace(rho.matrix() * obs.effects()[x]).real();
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return detail::finish("naimark", trials, worst, 1e-9);
}

/// Two-qubit memory contexts with X = sigma_z, Y = sigma_x:
/// old_gap <= 0 <= new_gap and old_gap + new_gap = 0.
inline SuiteResult verify_memory(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 7, t);
        const DensityMatrix joint = random_density(4, 1 + s % 4, derive_seed(s, 1, 0)).with_dims({2, 2});
        const auto gap = memory_gap(MemoryContext(joint, pauli_observable('z'), pauli_observable('x')));
        worst = std::max({worst, gap.old_gap, -gap.new_gap, std::abs(gap.old_gap + gap.new_gap)});
    }
    return detail::finish("memory", trials, worst, 1e-9);
}

/// Modified IPC vanishes when Y commutes with X: Y = X, or a commuting
/// coarse-graining of X when d = 3.
inline SuiteResult verify_commuting(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 8, t);
        const std::size_t d = 2 + t % 2;
        const DensityMatrix rho = random_density(d, 1 + s % d, derive_seed(s, 1, 0));
        const Observable x = random_rank_one_pvm(d, derive_seed(s, 2, 0));
        worst = std::max(worst, std::abs(ipc_modified(Context(rho, x, x))));
        if (d == 3) {
            const Observable coarse({x.effects()[0] + x.effects()[1], x.effects()[2]});
            worst = std::max(worst, std::abs(ipc_modified(Context(rho, x, coarse))));
        }
    }
    return detail::finish("commuting", trials, worst, 1e-9);
}

/// N_X o N_X = N_X as maps, compared through Choi matrices.
inline SuiteResult verify_luders_idempotent(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Channel n = luders_channel(random_rank_one_pvm(2 + t % 3, derive_seed(seed, 9, t)));
        worst = std::max(worst, max_abs_diff(choi_matrix(compose(n, n).map()), choi_matrix(n.map())));
    }
    return detail::finish("luders-idempotent", trials, worst, 1e-9);
}

/// Post-processed branches agree with the composition applied to matrix units.
inline SuiteResult verify_post_process(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 10, t);
        const std::size_t d = 2 + t % 2;
        const Instrument inst = random_instrument(d, 2, derive_seed(s, 1, 0));
        const Channel theta = random_channel(inst.out_dim(), d, 2, derive_seed(s, 2, 0));
        const Instrument processed = post_process(theta, inst);
        // Post-processing by a channel leaves every branch effect unchanged.
        for (std::size_t x = 0; x < inst.size(); ++x)
            worst = std::max(worst, max_abs_diff(processed.branches()[x].effect(), inst.branches()[x].effect()));
        for (std::size_t x = 0; x < inst.size(); ++x) {
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    ComplexMatrix unit(d, d);
                    unit(a, b) = 1.0;
                    worst = std::max(worst, max_abs_diff(processed.branches()[x].apply(unit),
                                                         theta.apply(inst.branches()[x].apply(unit))));
                }
        }
    }
    return detail::finish("post-process", trials, worst, 1e-9);
}

/// Eve's parent instrument leaks no more than a random post-processing of it.
inline SuiteResult verify_parent_optimality(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 11, t);
        const std::size_t d = 2 + t % 2;
        const DensityMatrix rho = random_density(d, 1 + s % d, derive_seed(s, 1, 0));
        const Instrument a = luders_instrument(random_rank_one_pvm(d, derive_seed(s, 2, 0)));
        const Observable y = random_povm(d, 2, derive_seed(s, 3, 0));
        const Instrument parent = parent_instrument(y);
        const Channel theta = random_channel(parent.out_dim(), d, 2, derive_seed(s, 4, 0));
        const double best = leak(rho, a, parent).leak;
        const double other = leak(rho, a, post_process(theta, parent)).leak;
        worst = std::max(worst, best - other);
    }
    return detail::finish("parent-optimality", trials, worst, 1e-9);
}

/// Werner family: C(p |Phi+><Phi+| + (1 - p) I/4) = max(0, (3p - 1)/2).
inline SuiteResult verify_concurrence_family(std::uint64_t, std::size_t trials) {
    double worst = 0.0;
    const double h = 1.0 / std::sqrt(2.0);
    const DensityMatrix bell = pure({h, 0.0, 0.0, h}, {2, 2});
    for (std::size_t t = 0; t < trials; ++t) {
        const double p = trials == 1 ? 1.0 : static_cast<double>(t) / static_cast<double>(trials - 1);
        const DensityMatrix w = DensityMatrix::from_matrix(
            bell.matrix() * Complex(p) + ComplexMatrix::identity(4) * Complex((1.0 - p) / 4.0), {2, 2});
        worst = std::max(worst, std::abs(concurrence(w) - std::max(0.0, (3.0 * p - 1.0) / 2.0)));
    }
    return detail::finish("concurrence-family", trials, worst, 1e-9);
}

/// random_density returns unit-trace PSD states of the requested rank.
inline SuiteResult verify_random_density(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t d = 2 + t % 4;
        const std::size_t rank = 1 + (t / 4) % d;
        const DensityMatrix rho = random_density(d, rank, derive_seed(seed, 12, t));
        worst = std::max(worst, std::abs(trace(rho.matrix()).real() - 1.0));
        worst = std::max(worst, numerical_rank(rho.matrix()) == rank ? 0.0 : 1.0);
    }
    return detail::finish("random-density-rank", trials, worst, 1e-9);
}

/// Entropy-difference measure with a pure depolarising Eve equals -S(Lambda_A(rho)).
inline SuiteResult verify_old_negativity(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 13, t);
        const std::size_t d = 2 + t % 2;
        const DensityMatrix rho = random_density(d, 1 + s % d, derive_seed(s, 1, 0));
        const Instrument a = detail::sample_instrument(d, derive_seed(s, 2, 0));
        const DensityMatrix eta = random_density(a.out_dim(), 1, derive_seed(s, 3, 0));
        const Instrument b = depolarizing_instrument(random_povm(a.out_dim(), 2, derive_seed(s, 4, 0)), eta);
        const double expected = -entropy(induced_channel(a).apply(rho));
        worst = std::max(worst, std::abs(old_ipc_generalized(rho, a, b) - expected));
    }
    return detail::finish("old-negativity", trials, worst, 1e-9);
}

/// Every constructed instrument implements the POVM it was built from.
inline SuiteResult verify_implements(std::uint64_t seed, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, 14, t);
        const std::size_t d = 2 + t % 2;
        const Observable obs = random_povm(d, 2 + s % 3, derive_seed(s, 1, 0));
        const DensityMatrix eta = random_density(d, 1 + s % d, derive_seed(s, 2, 0));
        for (const Instrument &inst : {luders_instrument(obs), parent_instrument(obs), depolarizing_instrument(obs, eta)})
            for (std::size_t x = 0; x < obs.size(); ++x)
                worst = std::max(worst, max_abs_diff(inst.branches()[x].effect(), obs.effects()[x]));
    }
    return detail::finish("implements", trials, worst, 1e-9);
}

struct SuiteSpec {
    std::string name;
    std::function<SuiteResult(std::uint64_t, std::size_t)> run;
};

inline const std::vector<SuiteSpec> &verify_suites() {
    static const std::vector<SuiteSpec> suites{
        {"non-negativity", verify_non_negativity},
        {"data-processing", verify_data_processing},
        {"holevo-bounds", verify_holevo_bounds},
        {"concavity", verify_concavity},
        {"sharp-relation", verify_sharp_relation},
        {"naimark", verify_naimark},
        {"memory", verify_memory},
        {"commuting", verify_commuting},
        {"luders-idempotent", verify_luders_idempotent},
        {"post-process", verify_post_process},
        {"parent-optimality", verify_parent_optimality},
        {"concurrence-family", verify_concurrence_family},
        {"random-density-rank", verify_random_density},
        {"old-negativity", verify_old_negativity},
        {"implements", verify_implements},
    };
    return suites;
}

/// Runs one named suite, or all suites for "all".
inline std::vector<SuiteResult> run_verify(const std::string &suite, std::uint64_t seed, std::size_t trials) {
    std::vector<SuiteResult> out;
    for (const auto &s : verify_suites())
        if (suite == "all" || suite == s.name) out.push_back(s.run(seed, trials));
    if (out.empty()) throw Error(ErrorCode::invalid_parameter, "unknown suite '" + suite + "'");
    return out;
}

}  // namespace ctxinc
