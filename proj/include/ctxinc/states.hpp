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

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/linalg.hpp"

namespace ctxinc {

/// Trace-one positive Hermitian operator with declared subsystem structure.
class DensityMatrix {
   public:
    /// Validates and wraps m. Small asymmetry (within tol::herm) is symmetrized
    /// and a trace within 1e-9 of one is renormalized.
    static DensityMatrix from_matrix(const ComplexMatrix &m, SubsystemDims dims = {}) {
        if (!m.is_square() || m.rows() == 0) {
            throw Error(ErrorCode::invalid_state, "density matrix must be square and non-empty");
        }
        if (dims.count() == 0) dims = SubsystemDims{m.rows()};
        if (dims.total() != m.rows()) {
            throw Error(ErrorCode::invalid_dims, "subsystem dims do not multiply to " + std::to_string(m.rows()));
        }
        if (!is_hermitian(m)) throw Error(ErrorCode::invalid_state, "state is not Hermitian");
        ComplexMatrix h = hermitian_part(m);
        const double tr = trace(h).real();
        if (std::abs(tr - 1.0) > 1e-9) {
            throw Error(ErrorCode::invalid_state, "state trace " + std::to_string(tr) + " differs from 1");
        }
        h *= 1.0 / tr;
        auto eig = hermitian_eig(h);
        if (eig.values.front() < -tol::psd) {
            throw Error(ErrorCode::invalid_state,
                        "state has negative eigenvalue " + std::to_string(eig.values.front()));
        }
        return DensityMatrix(std::move(h), std::move(dims), std::move(eig.values));
    }

    /// Normalizes a positive operator of nonzero trace, e.g. an unnormalized
    /// branch output Phi_x(rho).
    static DensityMatrix normalized(const ComplexMatrix &m, SubsystemDims dims = {}) {
        const double tr = trace(m).real();
        if (!(tr > 0.0)) throw Error(ErrorCode::invalid_state, "cannot normalize an operator with trace <= 0");
        ComplexMatrix scaled = hermitian_part(m);
        scaled *= 1.0 / tr;
        return from_matrix(scaled, std::move(dims));
    }

    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    const SubsystemDims &dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }
    /// Eigenvalues, ascending, as computed during validation.
    const std::vector<double> &spectrum() const noexcept { return spectrum_; }

    DensityMatrix with_dims(SubsystemDims dims) const {
        if (dims.total() != dim()) throw Error(ErrorCode::invalid_dims, "dims do not match state dimension");
        DensityMatrix r = *this;
        r.dims_ = std::move(dims);
        return r;
    }

   private:
    DensityMatrix(ComplexMatrix m, SubsystemDims dims, std::vector<double> spectrum)
        : matrix_(std::move(m)), dims_(std::move(dims)), spectrum_(std::move(spectrum)) {}

    ComplexMatrix matrix_;
    SubsystemDims dims_;
    std::vector<double> spectrum_;
};

/// Reduced state on the kept subsystems.
inline DensityMatrix reduce(const DensityMatrix &rho, std::initializer_list<std::size_t> keep) {
    std::vector<std::size_t> kept(keep);
    std::vector<std::size_t> kept_dims;
    for (auto k : kept) {
        if (k >= rho.dims().count()) throw Error(ErrorCode::invalid_dims, "subsystem index out of range");
        kept_dims.push_back(rho.dims().dims[k]);
    }
    return DensityMatrix::from_matrix(partial_trace(rho.matrix(), rho.dims(), kept),
                                      SubsystemDims(std::move(kept_dims)));
}

inline DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<std::size_t> dims = a.dims().dims;
    dims.insert(dims.end(), b.dims().dims.begin(), b.dims().dims.end());
    return DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()), SubsystemDims(std::move(dims)));
}

struct EnsembleMember {
    double probability;
    DensityMatrix state;
};

/// Probability-weighted list of states on a common space.
class Ensemble {
   public:
    explicit Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
        if (members_.empty()) throw Error(ErrorCode::invalid_ensemble, "ensemble has no members");
        double sum = 0.0;
        for (const auto &m : members_) {
            if (!(m.probability >= 0.0 && m.probability <= 1.0 + 1e-9)) {
                throw Error(ErrorCode::invalid_ensemble, "probability " + std::to_string(m.probability) +
                                                             " outside [0, 1]");
            }
            if (m.state.dims() != members_.front().state.dims()) {
                throw Error(ErrorCode::invalid_ensemble, "ensemble states live on different spaces");
            }
            sum += m.probability;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw Error(ErrorCode::invalid_ensemble, "probabilities sum to " + std::to_string(sum));
        }
        for (auto &m : members_) m.probability /= sum;
    }

    const std::vector<EnsembleMember> &members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    const SubsystemDims &dims() const noexcept { return members_.front().state.dims(); }

    DensityMatrix average() const {
        ComplexMatrix avg(members_.front().state.dim(), members_.front().state.dim());
        for (const auto &m : members_) {
            if (m.probability == 0.0) continue;
            avg += m.state.matrix() * Complex(m.probability);
        }
        return DensityMatrix::from_matrix(avg, dims());
    }

   private:
    std::vector<EnsembleMember> members_;
};

inline DensityMatrix maximally_mixed(std::size_t d) {
    if (d == 0) throw Error(ErrorCode::invalid_dimension, "dimension must be positive");
    return DensityMatrix::from_matrix(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
}

inline DensityMatrix pure(std::span<const Complex> v, SubsystemDims dims = {}) {
    double norm2 = 0.0;
    for (const auto &z : v) norm2 += std::norm(z);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw Error(ErrorCode::invalid_state, "zero state vector");
    return DensityMatrix::from_matrix(outer(v, v) * Complex(1.0 / norm2), std::move(dims));
}

inline DensityMatrix pure(std::initializer_list<Complex> v, SubsystemDims dims = {}) {
    return pure(std::span<const Complex>(v.begin(), v.size()), std::move(dims));
}

/// Computational basis vector |k> in dimension d.
inline ComplexVector basis_vector(std::size_t d, std::size_t k) {
    ComplexVector v(d);
    v.at(k) = 1.0;
    return v;
}

// Seeded sampling. Every generator takes an explicit seed; nothing reads a
// global RNG.

inline ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

/// Orthonormalizes the columns of g (modified Gram-Schmidt). Equivalent to the
/// Q factor of a QR decomposition whose R has a positive real diagonal.
inline ComplexMatrix orthonormal_columns(const ComplexMatrix &g) {
    ComplexMatrix q = g;
    for (std::size_t j = 0; j < q.cols(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex overlap{};
            for (std::size_t i = 0; i < q.rows(); ++i) overlap += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) -= overlap * q(i, k);
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < q.rows(); ++i) norm2 += std::norm(q(i, j));
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) *= inv;
    }
    return q;
}

/// Haar-random unitary: QR of a complex Ginibre matrix with phase-fixed R.
inline ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed) {
    if (d == 0) throw Error(ErrorCode::invalid_dimension, "dimension must be positive");
    std::mt19937_64 rng(seed);
    return orthonormal_columns(gaussian_matrix(d, d, rng));
}

/// Ginibre-induced random state G G^dagger / Tr with G of shape d x rank.
inline DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
    if (d == 0) throw Error(ErrorCode::invalid_dimension, "dimension must be positive");
    if (rank < 1 || rank > d) {
        throw Error(ErrorCode::invalid_rank, "rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
    }
    std::mt19937_64 rng(seed);
    const ComplexMatrix g = gaussian_matrix(d, rank, rng);
    ComplexMatrix rho = g * dagger(g);
    return DensityMatrix::normalized(rho);
}

/// Independent per-trial seeds from one base seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream * 0x100000001B3ULL + index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace ctxinc
