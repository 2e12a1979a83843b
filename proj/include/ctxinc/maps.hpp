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

// Completely positive maps in Kraus form: trace non-increasing maps, channels
// and instruments.

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/linalg.hpp"
#include "ctxinc/states.hpp"

namespace ctxinc {

/// Sum over k of K_k^dagger K_k.
inline ComplexMatrix kraus_effect(std::span<const ComplexMatrix> kraus, std::size_t in_dim) {
    ComplexMatrix s(in_dim, in_dim);
    for (const auto &k : kraus) s += dagger(k) * k;
    return s;
}

/// CP trace non-increasing map rho -> sum_k K_k rho K_k^dagger.
class KrausMap {
   public:
    KrausMap(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus)
        : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
        if (in_dim_ == 0 || out_dim_ == 0) throw Error(ErrorCode::invalid_map, "map dimensions must be positive");
        for (const auto &k : kraus_) {
            if (k.rows() != out_dim_ || k.cols() != in_dim_) {
                throw Error(ErrorCode::invalid_map, "Kraus operator of shape " + std::to_string(k.rows()) + "x" +
                                                        std::to_string(k.cols()) + ", expected " +
                                                        std::to_string(out_dim_) + "x" + std::to_string(in_dim_));
            }
        }
        const auto slack = eigenvalues(ComplexMatrix::identity(in_dim_) - effect());
        if (slack.front() < -tol::recon) {
            throw Error(ErrorCode::invalid_map, "map increases trace (sum K^dagger K exceeds identity by " +
                                                    std::to_string(-slack.front()) + ")");
        }
    }

    std::size_t in_dim() const noexcept { return in_dim_; }
    std::size_t out_dim() const noexcept { return out_dim_; }
    const std::vector<ComplexMatrix> &kraus() const noexcept { return kraus_; }

    /// sum_k K_k^dagger K_k; the effect this map assigns to its outcome.
    ComplexMatrix effect() const { return kraus_effect(kraus_, in_dim_); }

    ComplexMatrix apply(const ComplexMatrix &rho) const {
        if (!rho.is_square() || rho.rows() != in_dim_) {
            throw Error(ErrorCode::dimension_mismatch, "map expects a " + std::to_string(in_dim_) +
                                                           "-dimensional input, got " + std::to_string(rho.rows()));
        }
        ComplexMatrix out(out_dim_, out_dim_);
        for (const auto &k : kraus_) out += k * rho * dagger(k);
        return out;
    }

   private:
    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<ComplexMatrix> kraus_;
};

/// Trace-preserving KrausMap.
class Channel {
   public:
    explicit Channel(KrausMap map, std::string name = "channel") : map_(std::move(map)), name_(std::move(name)) {
        const double defect = max_abs_diff(map_.effect(), ComplexMatrix::identity(map_.in_dim()));
        if (defect > tol::recon) {
            throw Error(ErrorCode::invalid_map, "channel is not trace preserving (defect " + std::to_string(defect) + ")");
        }
    }

    const KrausMap &map() const noexcept { return map_; }
    std::size_t in_dim() const noexcept { return map_.in_dim(); }
    std::size_t out_dim() const noexcept { return map_.out_dim(); }
    const std::string &name() const noexcept { return name_; }

    ComplexMatrix apply(const ComplexMatrix &rho) const { return map_.apply(rho); }

    DensityMatrix apply(const DensityMatrix &rho, SubsystemDims out_dims = {}) const {
        if (out_dims.count() == 0 && out_dim() == in_dim()) out_dims = rho.dims();
        return DensityMatrix::from_matrix(hermitian_part(map_.apply(rho.matrix())), std::move(out_dims));
    }

   private:
    KrausMap map_;
    std::string name_;
};

inline Channel identity_channel(std::size_t d) {
    return Channel(KrausMap(d, d, {ComplexMatrix::identity(d)}), "identity");
}

inline Channel unitary_channel(const ComplexMatrix &u, std::string name = "unitary") {
    if (!is_unitary(u)) throw Error(ErrorCode::invalid_map, "matrix is not unitary");
    return Channel(KrausMap(u.cols(), u.rows(), {u}), std::move(name));
}

/// outer o inner.
inline KrausMap compose(const KrausMap &outer_map, const KrausMap &inner_map) {
    if (outer_map.in_dim() != inner_map.out_dim()) {
        throw Error(ErrorCode::dimension_mismatch, "cannot compose: inner output dimension " +
                                                       std::to_string(inner_map.out_dim()) + " vs outer input " +
                                                       std::to_string(outer_map.in_dim()));
    }
    std::vector<ComplexMatrix> kraus;
    for (const auto &a : outer_map.kraus())
        for (const auto &b : inner_map.kraus()) kraus.push_back(a * b);
    return KrausMap(inner_map.in_dim(), outer_map.out_dim(), std::move(kraus));
}

inline Channel compose(const Channel &outer_channel, const Channel &inner_channel) {
    return Channel(compose(outer_channel.map(), inner_channel.map()),
                   outer_channel.name() + " o " + inner_channel.name());
}

/// map (x) id_env, acting on the first factor of a bipartite space.
inline KrausMap tensor_identity(const KrausMap &map, std::size_t env_dim) {
    std::vector<ComplexMatrix> kraus;
    const auto id = ComplexMatrix::identity(env_dim);
    for (const auto &k : map.kraus()) kraus.push_back(kron(k, id));
    return KrausMap(map.in_dim() * env_dim, map.out_dim() * env_dim, std::move(kraus));
}

inline Channel tensor_identity(const Channel &channel, std::size_t env_dim) {
    return Channel(tensor_identity(channel.map(), env_dim), channel.name() + " (x) id");
}

/// Unnormalized Choi operator sum_ij |i><j| (x) Phi(|i><j|), input factor first.
/// Two maps are equal iff their Choi operators agree.
inline ComplexMatrix choi_matrix(const KrausMap &map) {
    const std::size_t din = map.in_dim();
    const std::size_t dout = map.out_dim();
    ComplexMatrix j(din * dout, din * dout);
    for (std::size_t a = 0; a < din; ++a)
        for (std::size_t b = 0; b < din; ++b) {
            ComplexMatrix unit(din, din);
            unit(a, b) = 1.0;
            const ComplexMatrix image = map.apply(unit);
            for (std::size_t r = 0; r < dout; ++r)
                for (std::size_t c = 0; c < dout; ++c) j(a * dout + r, b * dout + c) = image(r, c);
        }
    return j;
}

inline bool same_map(const KrausMap &a, const KrausMap &b, double tolerance = tol::recon) {
    return a.in_dim() == b.in_dim() && a.out_dim() == b.out_dim() &&
           max_abs_diff(choi_matrix(a), choi_matrix(b)) <= tolerance;
}

/// Outcome-indexed KrausMaps whose sum is a channel.
class Instrument {
   public:
    Instrument(std::vector<std::string> labels, std::vector<KrausMap> branches, std::string name = "instrument")
        : labels_(std::move(labels)), branches_(std::move(branches)), name_(std::move(name)) {
        if (branches_.empty() || labels_.size() != branches_.size()) {
            throw Error(ErrorCode::invalid_instrument, "need one label per branch and at least one branch");
        }
        if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
            throw Error(ErrorCode::invalid_instrument, "duplicate outcome labels");
        }
        const auto &first = branches_.front();
        ComplexMatrix total(first.in_dim(), first.in_dim());
        for (const auto &b : branches_) {
            if (b.in_dim() != first.in_dim() || b.out_dim() != first.out_dim()) {
                throw Error(ErrorCode::invalid_instrument, "branches disagree on input/output dimension");
            }
            total += b.effect();
        }
        const double defect = max_abs_diff(total, ComplexMatrix::identity(first.in_dim()));
        if (defect > tol::recon) {
            throw Error(ErrorCode::invalid_instrument,
                        "branches do not sum to a channel (completeness defect " + std::to_string(defect) + ")");
        }
    }

    const std::vector<std::string> &labels() const noexcept { return labels_; }
    const std::vector<KrausMap> &branches() const noexcept { return branches_; }
    std::size_t size() const noexcept { return branches_.size(); }
    std::size_t in_dim() const noexcept { return branches_.front().in_dim(); }
    std::size_t out_dim() const noexcept { return branches_.front().out_dim(); }
    const std::string &name() const noexcept { return name_; }

   private:
    std::vector<std::string> labels_;
    std::vector<KrausMap> branches_;
    std::string name_;
};

}  // namespace ctxinc
