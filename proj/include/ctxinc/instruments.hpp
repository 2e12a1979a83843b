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

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/linalg.hpp"
#include "ctxinc/maps.hpp"
#include "ctxinc/measurements.hpp"
#include "ctxinc/states.hpp"

namespace ctxinc {

struct BranchOutcome {
    double weight;
    std::optional<DensityMatrix> state;  // empty when weight <= tol::weight
};

/// Weight Tr[Phi(rho)] and the normalized post-measurement state.
inline BranchOutcome apply_branch(const KrausMap &phi, const DensityMatrix &rho) {
    const ComplexMatrix out = phi.apply(rho.matrix());
    const double w = std::max(0.0, trace(out).real());
    if (w <= tol::weight) return {w, std::nullopt};
    return {w, DensityMatrix::normalized(out)};
}

/// Ensemble {p_x, rho_x} produced by an instrument; zero-weight branches are dropped.
inline Ensemble apply_instrument(const Instrument &inst, const DensityMatrix &rho) {
    if (inst.in_dim() != rho.dim()) {
        throw Error(ErrorCode::dimension_mismatch, "instrument '" + inst.name() + "' expects dimension " +
                                                       std::to_string(inst.in_dim()) + ", state has " +
                                                       std::to_string(rho.dim()));
    }
    std::vector<EnsembleMember> members;
    for (const auto &branch : inst.branches()) {
        auto outcome = apply_branch(branch, rho);
        if (outcome.state) members.push_back({outcome.weight, std::move(*outcome.state)});
    }
    return Ensemble(std::move(members));
}

inline Channel induced_channel(const Instrument &inst) {
    std::vector<ComplexMatrix> kraus;
    for (const auto &b : inst.branches()) kraus.insert(kraus.end(), b.kraus().begin(), b.kraus().end());
    try {
        return Channel(KrausMap(inst.in_dim(), inst.out_dim(), std::move(kraus)), "induced(" + inst.name() + ")");
    } catch (const Error &e) {
        throw Error(ErrorCode::invalid_instrument, e.what());
    }
}

/// True iff each branch's effect sum_k K^dagger K equals A(x); the operator
/// form of Tr[rho A(x)] = Tr[Phi_x(rho)] for all rho.
inline bool implements(const Instrument &inst, const Observable &obs, double tolerance = tol::recon) {
    if (inst.labels() != obs.labels()) {
        throw Error(ErrorCode::label_mismatch, "instrument and observable outcome labels differ");
    }
    if (inst.in_dim() != obs.dim()) return false;
    for (std::size_t x = 0; x < obs.size(); ++x)
        if (max_abs_diff(inst.branches()[x].effect(), obs.effects()[x]) > tolerance) return false;
    return true;
}

/// Branch x has the single Kraus operator sqrt(A(x)).
inline Instrument luders_instrument(const Observable &obs) {
    std::vector<KrausMap> branches;
    for (const auto &e : obs.effects()) branches.emplace_back(obs.dim(), obs.dim(), std::vector{matrix_sqrt_psd(e)});
    return Instrument(obs.labels(), std::move(branches), "luders");
}

/// Isometry V : H -> K and a PVM on K with V^dagger Ahat(x) V = A(x).
struct NaimarkExtension {
    ComplexMatrix isometry;
    Observable pvm;
    std::size_t k_dim;
};

/// Canonical extension on K = H (x) C^n: V|psi> = sum_x (sqrt(A(x))|psi>) (x) |x>
/// and Ahat(x) = I_d (x) |x><x|.
inline NaimarkExtension naimark_extension(const Observable &obs) {
    const std::size_t d = obs.dim();
    const std::size_t n = obs.size();
    ComplexMatrix v(d * n, d);
    for (std::size_t x = 0; x < n; ++x) {
        const ComplexMatrix root = matrix_sqrt_psd(obs.effects()[x]);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) v(i * n + x, j) = root(i, j);
    }
    std::vector<ComplexMatrix> projectors;
    for (std::size_t x = 0; x < n; ++x) {
        ComplexMatrix marker(n, n);
        marker(x, x) = 1.0;
        projectors.push_back(kron(ComplexMatrix::identity(d), marker));
    }
    return {std::move(v), Observable(obs.labels(), std::move(projectors)), d * n};
}

struct ParentOptions {
    /// Use the full dilation even when V = I would do.
    bool force_dilation = false;
};

/// Parent instrument: branch x has the single Kraus operator Ahat(x) V, so its
/// induced channel is the parent channel sum_x Ahat(x) V rho V^dagger Ahat(x).
/// Sharp rank-one observables take V = I, which makes this the Luders instrument.
inline Instrument parent_instrument(const Observable &obs, ParentOptions options = {}) {
    if (!options.force_dilation && is_sharp(obs) && is_rank_one(obs)) {
        Instrument luders = luders_instrument(obs);
        return Instrument(luders.labels(), luders.branches(), "parent");
    }
    const auto ext = naimark_extension(obs);
    std::vector<KrausMap> branches;
    for (const auto &projector : ext.pvm.effects()) {
        branches.emplace_back(obs.dim(), ext.k_dim, std::vector{projector * ext.isometry});
    }
    return Instrument(obs.labels(), std::move(branches), "parent");
}

/// Branch y acts as rho -> Tr[rho B(y)] eta; the induced channel is completely
/// depolarising to eta. Kraus operators sqrt(l_j) |e_j><k| sqrt(B(y)) over the
/// eigenpairs (l_j, e_j) of eta and the input basis |k>.
inline Instrument depolarizing_instrument(const Observable &obs, const DensityMatrix &eta) {
    const std::size_t din = obs.dim();
    const std::size_t dout = eta.dim();
    const auto eig = hermitian_eig(eta.matrix());
    std::vector<KrausMap> branches;
    for (const auto &effect : obs.effects()) {
        const ComplexMatrix root = matrix_sqrt_psd(effect);
        std::vector<ComplexMatrix> kraus;
        for (std::size_t j = 0; j < dout; ++j) {
            const double lj = eig.values[j];
            if (lj <= tol::weight) continue;
            for (std::size_t k = 0; k < din; ++k) {
                ComplexMatrix op(dout, din);
                for (std::size_t r = 0; r < dout; ++r)
                    for (std::size_t c = 0; c < din; ++c) op(r, c) = eig.vectors(r, j) * root(k, c);
                op *= std::sqrt(lj);
                if (max_abs(op) > 1e-14) kraus.push_back(std::move(op));
            }
        }
        branches.emplace_back(din, dout, std::move(kraus));
    }
    return Instrument(obs.labels(), std::move(branches), "depolarizing");
}

/// theta o inst: branch x has Kraus operators T_j K_{x,k}.
inline Instrument post_process(const Channel &theta, const Instrument &inst) {
    if (theta.in_dim() != inst.out_dim()) {
        throw Error(ErrorCode::dimension_mismatch, "channel '" + theta.name() + "' expects dimension " +
                                                       std::to_string(theta.in_dim()) + ", instrument '" +
                                                       inst.name() + "' outputs " + std::to_string(inst.out_dim()));
    }
    std::vector<KrausMap> branches;
    for (const auto &b : inst.branches()) branches.push_back(compose(theta.map(), b));
    return Instrument(inst.labels(), std::move(branches), theta.name() + " o " + inst.name());
}

/// {p_x, Lambda(rho_x)}.
inline Ensemble transform(const Ensemble &e, const Channel &channel) {
    std::vector<EnsembleMember> members;
    for (const auto &m : e.members()) {
        members.push_back({m.probability, channel.apply(m.state)});
    }
    return Ensemble(std::move(members));
}

}  // namespace ctxinc
