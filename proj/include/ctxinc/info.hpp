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

// Entropic functionals. All values are in nats.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/linalg.hpp"
#include "ctxinc/states.hpp"

namespace ctxinc {

/// Shannon entropy of a probability vector, 0 ln 0 = 0.
inline double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

/// Von Neumann entropy -Tr(rho ln rho).
inline double entropy(const DensityMatrix &rho) {
    return shannon_entropy(clipped_psd_spectrum(rho.spectrum()));
}

/// ln d - S(rho).
inline double old_information(const DensityMatrix &rho) {
    return std::log(static_cast<double>(rho.dim())) - entropy(rho);
}

namespace detail {
inline double clip_nonnegative(double v) { return (v < 0.0 && v >= -1e-9) ? 0.0 : v; }

inline void require_bipartite(const DensityMatrix &rho) {
    if (rho.dims().count() != 2) {
        throw Error(ErrorCode::invalid_dims, "expected a bipartite state, got " +
                                                 std::to_string(rho.dims().count()) + " subsystems");
    }
}
}  // namespace detail

/// chi = S(sum p_x rho_x) - sum p_x S(rho_x); zero-probability members skipped.
inline double holevo_chi(const Ensemble &e) {
    double conditional = 0.0;
    for (const auto &m : e.members())
        if (m.probability > 0.0) conditional += m.probability * entropy(m.state);
    return detail::clip_nonnegative(entropy(e.average()) - conditional);
}

/// S(A) + S(M) - S(AM).
inline double mutual_information(const DensityMatrix &rho) {
    detail::require_bipartite(rho);
    return detail::clip_nonnegative(entropy(reduce(rho, {0})) + entropy(reduce(rho, {1})) - entropy(rho));
}

/// S(AM) - S(conditioning subsystem). May be negative.
inline double conditional_entropy(const DensityMatrix &rho, std::size_t condition_on) {
    detail::require_bipartite(rho);
    if (condition_on > 1) throw Error(ErrorCode::invalid_dims, "conditioning index must be 0 or 1");
    return entropy(rho) - entropy(condition_on == 0 ? reduce(rho, {0}) : reduce(rho, {1}));
}

/// I_coh(M>A) = S(A) - S(AM) for a state ordered (A, M). May be negative.
inline double coherent_information(const DensityMatrix &rho) {
    detail::require_bipartite(rho);
    return entropy(reduce(rho, {0})) - entropy(rho);
}

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), with l_i the descending
/// square roots of the spectrum of the Hermitian R = sqrt(rho) rho~ sqrt(rho),
/// rho~ = (Y (x) Y) rho* (Y (x) Y).
inline double concurrence(const DensityMatrix &rho) {
    if (rho.dims() != SubsystemDims{2, 2}) throw Error(ErrorCode::invalid_dims, "concurrence needs dims [2, 2]");
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    const ComplexMatrix flipped = yy * conjugate(rho.matrix()) * yy;
    const ComplexMatrix root = matrix_sqrt_psd(rho.matrix());
    const ComplexMatrix r = hermitian_part(root * flipped * root);
    auto values = clipped_psd_spectrum(eigenvalues(r));
    std::vector<double> l;
    for (double v : values) l.push_back(std::sqrt(v));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace ctxinc
