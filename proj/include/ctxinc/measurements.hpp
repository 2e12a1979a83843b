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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/linalg.hpp"
#include "ctxinc/maps.hpp"
#include "ctxinc/states.hpp"

namespace ctxinc {

struct ValidityReport {
    bool hermitian = true;
    bool positive = true;
    bool complete = true;
    double hermiticity_violation = 0.0;  // max |E - E^dagger|
    double positivity_violation = 0.0;   // max(0, -min eigenvalue)
    double completeness_violation = 0.0; // max |sum E - I|

    bool valid() const noexcept { return hermitian && positive && complete; }
};

/// Checks that effects form a POVM. Reports instead of throwing.
inline ValidityReport validate_effects(std::span<const ComplexMatrix> effects, double tolerance = tol::recon) {
    ValidityReport r;
    if (effects.empty() || !effects.front().is_square()) {
        r.complete = false;
        r.completeness_violation = 1.0;
        return r;
    }
    const std::size_t d = effects.front().rows();
    ComplexMatrix sum(d, d);
    for (const auto &e : effects) {
        if (!e.is_square() || e.rows() != d) {
            r.complete = false;
            r.completeness_violation = std::max(r.completeness_violation, 1.0);
            return r;
        }
        const double asym = max_abs_diff(e, dagger(e));
        r.hermiticity_violation = std::max(r.hermiticity_violation, asym);
        const double lowest = eigenvalues(hermitian_part(e)).front();
        r.positivity_violation = std::max(r.positivity_violation, -lowest);
        sum += e;
    }
    r.completeness_violation = max_abs_diff(sum, ComplexMatrix::identity(d));
    r.hermitian = r.hermiticity_violation <= tolerance;
    r.positive = r.positivity_violation <= tolerance;
    r.complete = r.completeness_violation <= tolerance;
    return r;
}

/// POVM: outcome-labelled positive effects summing to the identity.
class Observable {
   public:
    Observable(std::vector<std::string> labels, std::vector<ComplexMatrix> effects)
        : labels_(std::move(labels)), effects_(std::move(effects)) {
        if (labels_.size() != effects_.size()) {
            throw Error(ErrorCode::invalid_labels, std::to_string(labels_.size()) + " labels for " +
                                                       std::to_string(effects_.size()) + " effects");
        }
        if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
            throw Error(ErrorCode::invalid_labels, "duplicate outcome labels");
        }
        const auto report = validate_effects(effects_);
        if (!report.valid()) {
            throw Error(ErrorCode::invalid_observable,
                        "effects do not form a POVM (hermiticity " + std::to_string(report.hermiticity_violation) +
                            ", positivity " + std::to_string(report.positivity_violation) + ", completeness " +
                            std::to_string(report.completeness_violation) + ")");
        }
        for (auto &e : effects_) e = hermitian_part(e);
    }

    /// Labels "0", "1", ... in order.
    explicit Observable(const std::vector<ComplexMatrix> &effects) : Observable(default_labels(effects.size()), effects) {}

    const std::vector<std::string> &labels() const noexcept { return labels_; }
    const std::vector<ComplexMatrix> &effects() const noexcept { return effects_; }
    std::size_t size() const noexcept { return effects_.size(); }
    std::size_t dim() const noexcept { return effects_.front().rows(); }

    std::optional<std::size_t> index_of(const std::string &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

   private:
    static std::vector<std::string> default_labels(std::size_t n) {
        std::vector<std::string> l;
        for (std::size_t i = 0; i < n; ++i) l.push_back(std::to_string(i));
        return l;
    }

    std::vector<std::string> labels_;
    std::vector<ComplexMatrix> effects_;
};

inline ValidityReport validate(const Observable &obs) { return validate_effects(obs.effects()); }

inline bool is_sharp(const Observable &obs) {
    return std::all_of(obs.effects().begin(), obs.effects().end(),
                       [](const ComplexMatrix &e) { return approx_equal(e * e, e); });
}

inline bool is_rank_one(const Observable &obs) {
    return std::all_of(obs.effects().begin(), obs.effects().end(), [](const ComplexMatrix &e) {
        return max_abs(e) <= 1e-12 || numerical_rank(e) == 1;
    });
}

inline bool commutes(const Observable &x, const Observable &y) {
    if (x.dim() != y.dim()) throw Error(ErrorCode::dimension_mismatch, "observables act on different spaces");
    for (const auto &a : x.effects())
        for (const auto &b : y.effects())
            if (max_abs(commutator(a, b)) > tol::recon) return false;
    return true;
}

/// Rank-one PVM onto the columns of a unitary.
inline Observable basis_observable(const ComplexMatrix &u, std::vector<std::string> labels = {}) {
    if (!is_unitary(u)) throw Error(ErrorCode::invalid_observable, "basis matrix is not unitary");
    std::vector<ComplexMatrix> effects;
    for (std::size_t k = 0; k < u.cols(); ++k) {
        const auto v = column_of(u, k);
        effects.push_back(outer(v, v));
    }
    if (labels.empty()) return Observable(std::move(effects));
    return Observable(std::move(labels), std::move(effects));
}

/// Eigenprojectors of a Pauli operator: 'x' -> {+, -}, 'y' -> {+i, -i}, 'z' -> {0, 1}.
inline Observable pauli_observable(char axis) {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    switch (axis) {
        case 'z': return basis_observable(ComplexMatrix::identity(2), {"0", "1"});
        case 'x': return basis_observable(ComplexMatrix{{h, h}, {h, -h}}, {"+", "-"});
        case 'y': return basis_observable(ComplexMatrix{{h, h}, {i * h, -i * h}}, {"+i", "-i"});
        default: throw Error(ErrorCode::invalid_observable, std::string("unknown Pauli axis '") + axis + "'");
    }
}

/// Trine POVM {2/3 |phi_k><phi_k|} with Bloch vectors 120 degrees apart in the x-z plane.
inline Observable trine_observable() {
    std::vector<ComplexMatrix> effects;
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 3; ++k) {
        const double theta = 2.0 * pi * k / 3.0;
        const ComplexVector v{std::cos(theta / 2), std::sin(theta / 2)};
        effects.push_back(outer(v, v) * Complex(2.0 / 3.0));
    }
    return Observable(std::move(effects));
}

inline Observable trivial_observable(std::size_t d, std::span<const double> weights) {
    std::vector<ComplexMatrix> effects;
    for (double w : weights) effects.push_back(ComplexMatrix::identity(d) * Complex(w));
    return Observable(std::move(effects));
}

/// Label used for the outcome (a, b) of a joint observable.
inline std::string pair_label(const std::string &a, const std::string &b) { return "(" + a + "," + b + ")"; }

inline std::optional<std::pair<std::string, std::string>> split_pair_label(const std::string &label) {
    if (label.size() < 3 || label.front() != '(' || label.back() != ')') return std::nullopt;
    const std::string inner = label.substr(1, label.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos) return std::nullopt;
    return std::make_pair(inner.substr(0, comma), inner.substr(comma + 1));
}

/// Marginals A(x) = sum_y G(x, y) and B(y) = sum_x G(x, y) of a joint
/// observable whose labels "(x,y)" cover a full product grid.
inline std::pair<Observable, Observable> marginals_of_joint(const Observable &g) {
    std::vector<std::string> xs, ys;
    std::set<std::pair<std::string, std::string>> cells;
    for (const auto &label : g.labels()) {
        auto pair = split_pair_label(label);
        if (!pair) throw Error(ErrorCode::invalid_labels, "label '" + label + "' is not of the form (x,y)");
        if (std::find(xs.begin(), xs.end(), pair->first) == xs.end()) xs.push_back(pair->first);
        if (std::find(ys.begin(), ys.end(), pair->second) == ys.end()) ys.push_back(pair->second);
        cells.insert(*pair);
    }
    if (cells.size() != xs.size() * ys.size()) {
        throw Error(ErrorCode::invalid_labels, "joint labels do not form a product grid");
    }
    const std::size_t d = g.dim();
    std::vector<ComplexMatrix> a(xs.size(), ComplexMatrix(d, d));
    std::vector<ComplexMatrix> b(ys.size(), ComplexMatrix(d, d));
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto pair = *split_pair_label(g.labels()[k]);
        const auto xi = static_cast<std::size_t>(std::find(xs.begin(), xs.end(), pair.first) - xs.begin());
        const auto yi = static_cast<std::size_t>(std::find(ys.begin(), ys.end(), pair.second) - ys.begin());
        a[xi] += g.effects()[k];
        b[yi] += g.effects()[k];
    }
    return {Observable(xs, std::move(a)), Observable(ys, std::move(b))};
}

/// p_x = Tr[rho A(x)], clipped to [0, 1].
inline std::vector<double> born_probabilities(const DensityMatrix &rho, const Observable &obs) {
    if (rho.dim() != obs.dim()) {
        throw Error(ErrorCode::dimension_mismatch, "state dimension " + std::to_string(rho.dim()) +
                                                       " vs observable dimension " + std::to_string(obs.dim()));
    }
    std::vector<double> p;
    for (const auto &e : obs.effects()) p.push_back(std::clamp(trace(rho.matrix() * e).real(), 0.0, 1.0));
    return p;
}

/// N_X(rho) = sum_i X_i rho X_i for a sharp observable X.
inline Channel luders_channel(const Observable &x) {
    if (!is_sharp(x)) throw Error(ErrorCode::requires_sharp, "Luders channel needs a sharp observable");
    return Channel(KrausMap(x.dim(), x.dim(), x.effects()), "luders");
}

/// Measurement model (sigma_a, U, A'): ancilla state, coupling unitary on
/// system (x) ancilla, and a sharp pointer observable on the ancilla.
struct MeasurementModel {
    std::size_t system_dim;
    DensityMatrix ancilla_state;
    ComplexMatrix unitary;
    Observable pointer;
};

inline void check_model(const MeasurementModel &m) {
    const std::size_t da = m.ancilla_state.dim();
    if (m.unitary.rows() != m.system_dim * da || !is_unitary(m.unitary)) {
        throw Error(ErrorCode::invalid_model, "coupling must be a unitary on system (x) ancilla");
    }
    if (m.pointer.dim() != da) throw Error(ErrorCode::invalid_model, "pointer does not act on the ancilla");
}

/// Instrument of a measurement model with sharp pointer:
/// Phi_x(rho) = Tr_a[(I (x) A'(x)) U (rho (x) sigma_a) U^dagger (I (x) A'(x))].
///
/// Kraus operators are sqrt(s_k) (I (x) <e_j|)(I (x) A'(x)) U (I (x) |a_k>)
/// over the ancilla eigenpairs (s_k, a_k) and ancilla basis e_j.
inline Instrument model_to_instrument(const MeasurementModel &model) {
    check_model(model);
    if (!is_sharp(model.pointer)) {
        throw Error(ErrorCode::unsupported_pointer, "pointer observable must be a PVM");
    }
    const std::size_t ds = model.system_dim;
    const std::size_t da = model.ancilla_state.dim();
    const auto anc = hermitian_eig(model.ancilla_state.matrix());
    const auto id_s = ComplexMatrix::identity(ds);

    std::vector<KrausMap> branches;
    for (const auto &pointer_effect : model.pointer.effects()) {
        const ComplexMatrix projected = kron(id_s, pointer_effect) * model.unitary;
        std::vector<ComplexMatrix> kraus;
        for (std::size_t k = 0; k < da; ++k) {
            const double sk = anc.values[k];
            if (sk <= tol::weight) continue;
            const ComplexMatrix embed = kron(id_s, ComplexMatrix::column(column_of(anc.vectors, k)));
            for (std::size_t j = 0; j < da; ++j) {
                ComplexMatrix bra(1, da);
                bra(0, j) = 1.0;
                ComplexMatrix op = kron(id_s, bra) * projected * embed * Complex(std::sqrt(sk));
                if (max_abs(op) > 1e-14) kraus.push_back(std::move(op));
            }
        }
        branches.emplace_back(ds, ds, std::move(kraus));
    }
    return Instrument(model.pointer.labels(), std::move(branches), "model");
}

}  // namespace ctxinc
