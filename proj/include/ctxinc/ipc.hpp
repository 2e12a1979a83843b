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

// Incompatibility of a physical context (state, X, Y).
//
// Two families of measures live here:
//
//  * the entropy-difference measure S(N_Y N_X rho) - S(N_X rho), which is only
//    meaningful for Luders measurements and can go negative otherwise;
//  * the Holevo leakage chi(Alice's ensemble) - chi(ensemble after Eve's
//    channel), evaluated with parent instruments for both parties. Parent
//    instruments keep the largest Holevo quantity among all instruments for
//    the same observable, so this is the leakage a rational Eve achieves.
//
// Both have memory-assisted variants for rank-one projective measurements on
// the A half of a joint state on A (x) M.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/info.hpp"
#include "ctxinc/instruments.hpp"
#include "ctxinc/linalg.hpp"
#include "ctxinc/maps.hpp"
#include "ctxinc/measurements.hpp"
#include "ctxinc/states.hpp"

namespace ctxinc {

/// Instrument Alice uses for X: the parent instrument, which maximizes her
/// Holevo quantity. For sharp rank-one X this is the Luders instrument.
inline Instrument alice_max_instrument(const Observable &x) { return parent_instrument(x); }

/// (state, X, Y). Y acts on the output space of Alice's instrument for X.
class Context {
   public:
    Context(DensityMatrix state, Observable x_obs, Observable y_obs)
        : state_(std::move(state)), x_(std::move(x_obs)), y_(std::move(y_obs)) {
        if (x_.dim() != state_.dim()) {
            throw Error(ErrorCode::invalid_context, "X acts on dimension " + std::to_string(x_.dim()) +
                                                        " but the state has dimension " +
                                                        std::to_string(state_.dim()));
        }
        const std::size_t out = alice_max_instrument(x_).out_dim();
        if (y_.dim() != out) {
            throw Error(ErrorCode::invalid_context, "Y acts on dimension " + std::to_string(y_.dim()) +
                                                        " but Alice's instrument outputs dimension " +
                                                        std::to_string(out));
        }
    }

    const DensityMatrix &state() const noexcept { return state_; }
    const Observable &x_obs() const noexcept { return x_; }
    const Observable &y_obs() const noexcept { return y_; }

   private:
    DensityMatrix state_;
    Observable x_;
    Observable y_;
};

/// S(N_Y(N_X(rho))) - S(N_X(rho)) for sharp X, Y.
inline double old_ipc(const DensityMatrix &rho, const Observable &x, const Observable &y) {
    if (!is_sharp(x) || !is_sharp(y)) throw Error(ErrorCode::requires_sharp, "old IPC needs sharp X and Y");
    if (x.dim() != rho.dim() || y.dim() != rho.dim()) {
        throw Error(ErrorCode::dimension_mismatch, "X, Y and the state must share one space");
    }
    const DensityMatrix after_x = luders_channel(x).apply(rho);
    const DensityMatrix after_yx = luders_channel(y).apply(after_x);
    return entropy(after_yx) - entropy(after_x);
}

/// Entropy-difference measure with arbitrary instruments:
/// S((Lambda_B o Lambda_A)(rho)) - S(Lambda_A(rho)). Can be negative, e.g.
/// with a depolarising Eve that outputs a pure state.
inline double old_ipc_generalized(const DensityMatrix &rho, const Instrument &inst_a, const Instrument &inst_b) {
    if (inst_b.in_dim() != inst_a.out_dim()) {
        throw Error(ErrorCode::dimension_mismatch, "Eve's instrument '" + inst_b.name() + "' expects dimension " +
                                                       std::to_string(inst_b.in_dim()) + ", Alice's '" +
                                                       inst_a.name() + "' outputs " + std::to_string(inst_a.out_dim()));
    }
    const Channel lambda_a = induced_channel(inst_a);
    const Channel lambda_b = induced_channel(inst_b);
    const DensityMatrix after_a = lambda_a.apply(rho);
    const DensityMatrix after_b = lambda_b.apply(after_a);
    return entropy(after_b) - entropy(after_a);
}

struct ChiResult {
    double value;
    Ensemble ensemble;
};

/// Holevo quantity of the ensemble Alice's instrument prepares from rho.
inline ChiResult chi_alice(const DensityMatrix &rho, const Instrument &inst_a) {
    Ensemble e = apply_instrument(inst_a, rho);
    const double chi = holevo_chi(e);
    return {chi, std::move(e)};
}

struct LeakReport {
    double chi_alice;
    double chi_after_eve;
    double leak;
    Ensemble alice_ensemble;
    std::string eve_channel_id;
};

/// chi(rho, I_A) - chi(rho, I_A, I_B). Eve's outcomes stay hidden, so only her
/// induced channel acts on Alice's ensemble.
inline LeakReport leak(const DensityMatrix &rho, const Instrument &inst_a, const Instrument &inst_b) {
    if (inst_b.in_dim() != inst_a.out_dim()) {
        throw Error(ErrorCode::dimension_mismatch, "Eve's instrument '" + inst_b.name() + "' expects dimension " +
                                                       std::to_string(inst_b.in_dim()) + ", Alice's '" +
                                                       inst_a.name() + "' outputs " + std::to_string(inst_a.out_dim()));
    }
    auto alice = chi_alice(rho, inst_a);
    const Channel eve = induced_channel(inst_b);
    const double after = holevo_chi(transform(alice.ensemble, eve));
    return {alice.value, after, alice.value - after, std::move(alice.ensemble), eve.name()};
}

/// Leakage when Eve measures Y with its parent instrument, the minimum over
/// all Y-compatible instruments.
inline LeakReport min_leak_over_eve(const DensityMatrix &rho, const Instrument &inst_a, const Observable &y) {
    if (y.dim() != inst_a.out_dim()) {
        throw Error(ErrorCode::dimension_mismatch, "Y acts on dimension " + std::to_string(y.dim()) +
                                                       ", Alice's instrument outputs " +
                                                       std::to_string(inst_a.out_dim()));
    }
    return leak(rho, inst_a, parent_instrument(y));
}

/// Modified IPC: leakage with Alice's Holevo-maximizing instrument and Eve's
/// parent instrument.
inline double ipc_modified(const Context &c) {
    return min_leak_over_eve(c.state(), alice_max_instrument(c.x_obs()), c.y_obs()).leak;
}

namespace detail {
inline void require_sharp_rank_one(const Observable &o, const char *name) {
    if (!is_sharp(o) || !is_rank_one(o)) {
        throw Error(ErrorCode::requires_sharp, std::string(name) + " must be a rank-one projective measurement");
    }
}
}  // namespace detail

/// |ipc_modified - (sum_x p_x S(N_Y(rho_x)) - old_ipc)| for sharp rank-one X, Y.
/// The right-hand side is assembled from Luders post-states directly, without
/// the instrument or Holevo machinery.
inline double sharp_relation_residual(const DensityMatrix &rho, const Observable &x, const Observable &y) {
    detail::require_sharp_rank_one(x, "X");
    detail::require_sharp_rank_one(y, "Y");
    const double lhs = ipc_modified(Context(rho, x, y));

    const Channel n_y = luders_channel(y);
    double weighted = 0.0;
    for (const auto &projector : x.effects()) {
        const ComplexMatrix branch = projector * rho.matrix() * projector;
        const double p = trace(branch).real();
        if (p <= tol::weight) continue;
        weighted += p * entropy(n_y.apply(DensityMatrix::normalized(branch)));
    }
    const double rhs = weighted - old_ipc(rho, x, y);
    return std::abs(lhs - rhs);
}

/// Joint state on A (x) M with rank-one projective X and Y on A.
class MemoryContext {
   public:
    MemoryContext(DensityMatrix joint_state, Observable x_obs, Observable y_obs)
        : joint_(std::move(joint_state)), x_(std::move(x_obs)), y_(std::move(y_obs)) {
        if (joint_.dims().count() != 2) {
            throw Error(ErrorCode::invalid_context, "memory context needs a bipartite joint state");
        }
        if (x_.dim() != system_dim() || y_.dim() != system_dim()) {
            throw Error(ErrorCode::invalid_context, "X and Y must act on the A subsystem");
        }
        try {
            detail::require_sharp_rank_one(x_, "X");
            detail::require_sharp_rank_one(y_, "Y");
        } catch (const Error &e) {
            throw Error(ErrorCode::invalid_context, e.what());
        }
    }

    const DensityMatrix &joint_state() const noexcept { return joint_; }
    const Observable &x_obs() const noexcept { return x_; }
    const Observable &y_obs() const noexcept { return y_; }
    std::size_t system_dim() const { return joint_.dims().dims[0]; }
    std::size_t memory_dim() const { return joint_.dims().dims[1]; }

    /// The state on A alone.
    DensityMatrix input_state() const { return reduce(joint_, {0}); }

   private:
    DensityMatrix joint_;
    Observable x_;
    Observable y_;
};

/// States along the memory-assisted game.
struct MemoryTrajectory {
    std::vector<EnsembleMember> branches;  // {p_x, rho^x_AM}, surviving outcomes only
    std::vector<std::size_t> outcome_index;
    DensityMatrix after_alice;  // rho_AM = (N_X (x) id)(sigma)
    DensityMatrix after_eve;    // rho_A'M = (N_Y (x) id)(rho_AM)
};

inline MemoryTrajectory memory_trajectory(const MemoryContext &mc) {
    const std::size_t dm = mc.memory_dim();
    const SubsystemDims dims = mc.joint_state().dims();
    std::vector<EnsembleMember> branches;
    std::vector<std::size_t> index;
    const auto id_m = ComplexMatrix::identity(dm);
    for (std::size_t x = 0; x < mc.x_obs().size(); ++x) {
        const ComplexMatrix local = kron(mc.x_obs().effects()[x], id_m);
        const ComplexMatrix branch = local * mc.joint_state().matrix() * local;
        const double p = trace(branch).real();
        if (p <= tol::weight) continue;
        branches.push_back({p, DensityMatrix::normalized(branch, dims)});
        index.push_back(x);
    }
    const DensityMatrix after_alice = tensor_identity(luders_channel(mc.x_obs()), dm).apply(mc.joint_state());
    const DensityMatrix after_eve = tensor_identity(luders_channel(mc.y_obs()), dm).apply(after_alice);
    return {std::move(branches), std::move(index), after_alice, after_eve};
}

/// Memory-assisted entropy-difference measure S(rho_A'M) - S(rho_AM).
inline double old_ipc_mem(const MemoryContext &mc) {
    const auto t = memory_trajectory(mc);
    return entropy(t.after_eve) - entropy(t.after_alice);
}

/// sum_x p_x |x><x|_C (x) rho^x, classical register first.
inline DensityMatrix classical_quantum_state(std::span<const EnsembleMember> branches, std::size_t register_dim,
                                             std::span<const std::size_t> register_index) {
    const std::size_t d = branches.front().state.dim();
    ComplexMatrix cq(register_dim * d, register_dim * d);
    for (std::size_t b = 0; b < branches.size(); ++b) {
        const std::size_t offset = register_index[b] * d;
        const ComplexMatrix &rho = branches[b].state.matrix();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) cq(offset + i, offset + j) = branches[b].probability * rho(i, j);
    }
    std::vector<std::size_t> dims{register_dim};
    const auto &inner = branches.front().state.dims().dims;
    dims.insert(dims.end(), inner.begin(), inner.end());
    return DensityMatrix::from_matrix(cq, SubsystemDims(std::move(dims)));
}

/// Memory-assisted leakage evaluated three ways.
struct NewIpcMemBreakdown {
    /// S(AM) - S(A'M) - S(CAM) + S(CA'M) with explicit classical-quantum states.
    double cq_route;
    /// S(AM) - S(A'M) + sum_x p_x S(rho^x_A'), using rho^x_AM = |x><x| (x) rho^x_M.
    double weighted_form;
    /// S(AM) - S(A'M) + sum_x S(rho^x_A'), the same sum without outcome weights.
    double unweighted_form;

    double route_residual() const { return std::abs(cq_route - weighted_form); }
    double unweighted_divergence() const { return std::abs(unweighted_form - cq_route); }
};

inline NewIpcMemBreakdown new_ipc_mem_breakdown(const MemoryContext &mc) {
    const auto t = memory_trajectory(mc);
    const std::size_t n = mc.x_obs().size();
    const Channel eve_local = tensor_identity(luders_channel(mc.y_obs()), mc.memory_dim());

    std::vector<EnsembleMember> eve_branches;
    for (const auto &b : t.branches) eve_branches.push_back({b.probability, eve_local.apply(b.state)});

    const double s_am = entropy(t.after_alice);
    const double s_apm = entropy(t.after_eve);
    const double s_cam = entropy(classical_quantum_state(t.branches, n, t.outcome_index));
    const double s_capm = entropy(classical_quantum_state(eve_branches, n, t.outcome_index));

    const Channel n_y = luders_channel(mc.y_obs());
    double weighted = 0.0, unweighted = 0.0;
    for (std::size_t b = 0; b < t.branches.size(); ++b) {
        const ComplexMatrix &projector = mc.x_obs().effects()[t.outcome_index[b]];
        const double s = entropy(n_y.apply(DensityMatrix::normalized(projector)));
        weighted += t.branches[b].probability * s;
        unweighted += s;
    }
    return {s_am - s_apm - s_cam + s_capm, s_am - s_apm + weighted, s_am - s_apm + unweighted};
}

/// Memory-assisted modified IPC (classical-quantum route).
inline double new_ipc_mem(const MemoryContext &mc) { return new_ipc_mem_breakdown(mc).cq_route; }

struct MemoryGap {
    double old_gap;  // old_ipc - old_ipc_mem, never positive
    double new_gap;  // ipc_modified - new_ipc_mem, never negative
};

inline MemoryGap memory_gap(const MemoryContext &mc) {
    const DensityMatrix rho_in = mc.input_state();
    const double old_plain = old_ipc(rho_in, mc.x_obs(), mc.y_obs());
    const double new_plain = ipc_modified(Context(rho_in, mc.x_obs(), mc.y_obs()));
    return {old_plain - old_ipc_mem(mc), new_plain - new_ipc_mem(mc)};
}

}  // namespace ctxinc
