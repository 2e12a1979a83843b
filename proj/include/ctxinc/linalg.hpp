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

// Dense complex matrix kernel. Everything here works on small matrices
// (dimension <= 64), stored row-major without any sparse path.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"

namespace ctxinc {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

namespace tol {
/// Hermiticity tolerance (absolute, max-norm).
inline constexpr double herm = 1e-9;
/// Smallest eigenvalue still accepted as PSD.
inline constexpr double psd = 1e-9;
/// Reconstruction tolerance for decompositions and operator identities.
inline constexpr double recon = 1e-9;
/// Weights at or below this produce no post-measurement state.
inline constexpr double weight = 1e-12;
}  // namespace tol

class ComplexMatrix {
   public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::invalid_dims, "matrix of shape " + std::to_string(rows_) + "x" +
                                                     std::to_string(cols_) + " given " +
                                                     std::to_string(data_.size()) + " entries");
        }
        for (const auto &z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw Error(ErrorCode::invalid_dims, "matrix entries must be finite");
            }
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) throw Error(ErrorCode::invalid_dims, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    static ComplexMatrix column(std::span<const Complex> v) {
        return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix &operator*=(Complex s) {
        for (auto &z : data_) z *= s;
        return *this;
    }

    bool operator==(const ComplexMatrix &) const = default;

   private:
    void require_same_shape(const ComplexMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorCode::dimension_mismatch, "shape mismatch in elementwise operation");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::dimension_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                                       std::to_string(a.cols()) + " by " +
                                                       std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

/// Subsystem dimensions of a composite space, e.g. {2, 2} for two qubits.
struct SubsystemDims {
    std::vector<std::size_t> dims;

    SubsystemDims() = default;
    SubsystemDims(std::initializer_list<std::size_t> d) : dims(d) {}
    explicit SubsystemDims(std::vector<std::size_t> d) : dims(std::move(d)) {}

    std::size_t count() const noexcept { return dims.size(); }
    std::size_t total() const {
        return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    }
    bool operator==(const SubsystemDims &) const = default;
};

inline ComplexMatrix dagger(const ComplexMatrix &m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline ComplexMatrix conjugate(const ComplexMatrix &m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = std::conj(m(i, j));
    return r;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

inline Complex trace(const ComplexMatrix &m) {
    if (!m.is_square()) throw Error(ErrorCode::dimension_mismatch, "trace of a non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

/// Largest absolute entry; the norm used by every tolerance in the library.
inline double max_abs(const ComplexMatrix &m) {
    double r = 0.0;
    for (const auto &z : m.entries()) r = std::max(r, std::abs(z));
    return r;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::dimension_mismatch, "shape mismatch in comparison");
    }
    double r = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) r = std::max(r, std::abs(ea[k] - eb[k]));
    return r;
}

inline bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tolerance = tol::recon) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tolerance;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b - b * a; }

inline ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
    ComplexMatrix r(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
    return r;
}

inline ComplexVector column_of(const ComplexMatrix &m, std::size_t j) {
    ComplexVector v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

/// (m + m^dagger) / 2; removes roundoff asymmetry after products.
inline ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    ComplexMatrix r = m + dagger(m);
    r *= 0.5;
    return r;
}

inline bool is_hermitian(const ComplexMatrix &m, double tolerance = tol::herm) {
    return m.is_square() && max_abs_diff(m, dagger(m)) <= tolerance;
}

inline bool is_unitary(const ComplexMatrix &m, double tolerance = tol::recon) {
    return m.is_square() && approx_equal(dagger(m) * m, ComplexMatrix::identity(m.rows()), tolerance);
}

inline bool is_isometry(const ComplexMatrix &m, double tolerance = tol::recon) {
    return approx_equal(dagger(m) * m, ComplexMatrix::identity(m.cols()), tolerance);
}

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // eigenvectors as columns, same order as values
};

namespace detail {

inline double off_diagonal_norm2(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of a(p,q) with a diagonal unitary and
/// then applies the real symmetric Jacobi rotation, so the combined 2x2 block
/// G = D R is unitary and a(p,q) is annihilated exactly.
inline EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
    if (!m.is_square()) throw Error(ErrorCode::dimension_mismatch, "eigendecomposition of a non-square matrix");
    if (!is_hermitian(m)) {
        throw Error(ErrorCode::not_hermitian,
                    "max |m - m^dagger| = " + std::to_string(max_abs_diff(m, dagger(m))));
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 0.0;
    for (const auto &z : a.entries()) scale += std::norm(z);
    const double threshold = std::max(scale, 1e-300) * 1e-32;

    for (int sweep = 0; sweep < 100 && detail::off_diagonal_norm2(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq_abs = std::abs(a(p, q));
                if (apq_abs == 0.0) continue;
                const Complex phase = a(p, q) / apq_abs;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * apq_abs);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]]
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

inline std::vector<double> eigenvalues(const ComplexMatrix &m) { return hermitian_eig(m).values; }

/// Eigenvalues clipped at zero. Values in [-tol::psd, 0) are roundoff and map
/// to 0; anything more negative is a not-psd error.
inline std::vector<double> clipped_psd_spectrum(std::span<const double> values) {
    std::vector<double> out(values.begin(), values.end());
    for (auto &x : out) {
        if (x < -tol::psd) throw Error(ErrorCode::not_psd, "eigenvalue " + std::to_string(x) + " below tolerance");
        if (x < 0.0) x = 0.0;
    }
    return out;
}

inline bool is_psd(const ComplexMatrix &m, double tolerance = tol::psd) {
    if (!is_hermitian(m)) return false;
    const auto values = eigenvalues(m);
    return values.empty() || values.front() >= -tolerance;
}

/// f(m) = Q f(diag) Q^dagger for Hermitian m.
inline ComplexMatrix apply_spectral(const EigenDecomposition &eig, const std::function<double(double)> &f) {
    const std::size_t n = eig.values.size();
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eig.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex qik = eig.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += qik * std::conj(eig.vectors(j, k));
        }
    }
    return r;
}

inline ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &m) {
    auto eig = hermitian_eig(m);
    eig.values = clipped_psd_spectrum(eig.values);
    // sqrt turns eigensolver roundoff (~1e-17) into ~3e-9; treat it as zero.
    const double top = eig.values.empty() ? 0.0 : eig.values.back();
    const double floor = 8.0 * static_cast<double>(eig.values.size()) * std::numeric_limits<double>::epsilon() * top;
    for (auto &x : eig.values)
        if (x <= floor) x = 0.0;
    return apply_spectral(eig, [](double x) { return std::sqrt(x); });
}

/// Inverse square root of a positive definite matrix.
inline ComplexMatrix inverse_sqrt_pd(const ComplexMatrix &m) {
    const auto eig = hermitian_eig(m);
    if (!eig.values.empty() && eig.values.front() <= 0.0) {
        throw Error(ErrorCode::not_psd, "inverse square root of a singular matrix");
    }
    return apply_spectral(eig, [](double x) { return 1.0 / std::sqrt(x); });
}

inline std::size_t numerical_rank(const ComplexMatrix &m, double tolerance = tol::recon) {
    const auto values = eigenvalues(m);
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [&](double x) { return std::abs(x) > tolerance; }));
}

/// Partial trace keeping the listed subsystems (ascending, unique). An empty
/// keep-set traces out everything and returns the 1x1 matrix [Tr m].
inline ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                                   std::span<const std::size_t> keep) {
    if (!m.is_square() || dims.count() == 0 || dims.total() != m.rows()) {
        throw Error(ErrorCode::invalid_dims, "subsystem dims do not match a " + std::to_string(m.rows()) + "x" +
                                                 std::to_string(m.cols()) + " operator");
    }
    for (auto d : dims.dims)
        if (d == 0) throw Error(ErrorCode::invalid_dims, "subsystem dimension 0");
    std::vector<bool> kept(dims.count(), false);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] >= dims.count() || (k > 0 && keep[k] <= keep[k - 1])) {
            throw Error(ErrorCode::invalid_dims, "keep-set must be ascending subsystem indices");
        }
        kept[keep[k]] = true;
    }

    const std::size_t n_sub = dims.count();
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    for (std::size_t s = 0; s < n_sub; ++s) (kept[s] ? kept_dim : traced_dim) *= dims.dims[s];

    // Split a full index into (kept index, traced index) once, up front.
    const std::size_t total = m.rows();
    std::vector<std::size_t> kept_of(total), traced_of(total);
    std::vector<std::size_t> digits(n_sub);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t s = n_sub; s-- > 0;) {
            digits[s] = rem % dims.dims[s];
            rem /= dims.dims[s];
        }
        std::size_t ki = 0, ti = 0;
        for (std::size_t s = 0; s < n_sub; ++s) {
            if (kept[s]) ki = ki * dims.dims[s] + digits[s];
            else ti = ti * dims.dims[s] + digits[s];
        }
        kept_of[idx] = ki;
        traced_of[idx] = ti;
    }

    ComplexMatrix r(kept_dim, kept_dim);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (traced_of[i] == traced_of[j]) r(kept_of[i], kept_of[j]) += m(i, j);
    return r;
}

inline ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(m, dims, std::span<const std::size_t>(keep.begin(), keep.size()));
}

// Named single-qubit operators.
inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace ctxinc
