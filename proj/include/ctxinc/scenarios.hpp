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
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/info.hpp"
#include "ctxinc/instruments.hpp"
#include "ctxinc/ipc.hpp"
#include "ctxinc/measurements.hpp"
#include "ctxinc/states.hpp"

namespace ctxinc {

// ---------------------------------------------------------------------------
// Random-basis key distribution on the maximally mixed qubit.

struct Example1Entry {
    char x_axis;
    char y_axis;
    double old_value;
    double new_value;
};

struct Example1Result {
    double old_avg;
    double new_avg;
    std::vector<Example1Entry> entries;  // (z,z), (z,x), (x,z), (x,x)
};

/// Alice and Eve each pick sigma_z or sigma_x uniformly on I/2; averages of
/// the old and modified measures over the four contexts.
inline Example1Result run_example1() {
    const DensityMatrix rho = maximally_mixed(2);
    Example1Result r{0.0, 0.0, {}};
    for (char x : {'z', 'x'})
        for (char y : {'z', 'x'}) {
            const Observable ox = pauli_observable(x);
            const Observable oy = pauli_observable(y);
            Example1Entry e{x, y, old_ipc(rho, ox, oy), ipc_modified(Context(rho, ox, oy))};
            r.old_avg += 0.25 * e.old_value;
            r.new_avg += 0.25 * e.new_value;
            r.entries.push_back(e);
        }
    return r;
}

/// Same game, but Eve uses a depolarising instrument to eta instead of her
/// parent instrument. The average leak can only grow.
inline double run_example1_depolarizing_eve(const DensityMatrix &eta) {
    const DensityMatrix rho = maximally_mixed(2);
    double avg = 0.0;
    for (char x : {'z', 'x'})
        for (char y : {'z', 'x'}) {
            avg += 0.25 * leak(rho, alice_max_instrument(pauli_observable(x)),
                               depolarizing_instrument(pauli_observable(y), eta))
                              .leak;
        }
    return avg;
}

// ---------------------------------------------------------------------------
// Qubit memory sweep: sigma_in,M = p |psi><psi| + (1 - p) I/4 with
// |psi> = sqrt(a') |l1 l1'> + sqrt(b') |l2 l2'>, and a' chosen so that the
// input marginal stays alpha |l1><l1| + beta |l2><l2| for every p.

enum class QubitBasis { sigma_x, sigma_y, sigma_z };

inline ComplexMatrix basis_matrix(QubitBasis b) {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    switch (b) {
        case QubitBasis::sigma_x: return {{h, h}, {h, -h}};
        case QubitBasis::sigma_y: return {{h, h}, {i * h, -i * h}};
        case QubitBasis::sigma_z: return ComplexMatrix::identity(2);
    }
    return ComplexMatrix::identity(2);
}

struct Example2Config {
    double alpha = 0.25;
    std::vector<double> p_grid;
    QubitBasis eigenbasis = QubitBasis::sigma_y;
};

/// n uniform points on [p_min, p_max], endpoints exact.
inline std::vector<double> uniform_grid(double p_min, double p_max, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_parameter, "grid needs at least one point");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = n == 1 ? p_min : p_min + (p_max - p_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    g.back() = n == 1 ? p_min : p_max;
    return g;
}

inline Example2Config default_example2_config() { return {0.25, uniform_grid(0.5, 1.0, 101), QubitBasis::sigma_y}; }

/// a' solving alpha = p a' + (1 - p)/2.
inline double alpha_prime(double alpha, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_parameter, "p must lie in (0, 1]");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::invalid_parameter, "alpha must lie in [0, 1]");
    const double a = (alpha - (1.0 - p) / 2.0) / p;
    if (a < -1e-12 || a > 1.0 + 1e-12) {
        throw Error(ErrorCode::invalid_parameter, "p = " + std::to_string(p) + " gives alpha' = " + std::to_string(a) +
                                                      " outside [0, 1]");
    }
    return std::clamp(a, 0.0, 1.0);
}

inline DensityMatrix build_example2_state(const Example2Config &cfg, double p) {
    const double ap = alpha_prime(cfg.alpha, p);
    const double bp = 1.0 - ap;
    const ComplexMatrix u = basis_matrix(cfg.eigenbasis);
    const ComplexVector l1 = column_of(u, 0);
    const ComplexVector l2 = column_of(u, 1);
    ComplexVector psi(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) psi[2 * i + j] = std::sqrt(ap) * l1[i] * l1[j] + std::sqrt(bp) * l2[i] * l2[j];
    ComplexMatrix sigma = outer(psi, psi) * Complex(p) + ComplexMatrix::identity(4) * Complex((1.0 - p) / 4.0);
    return DensityMatrix::from_matrix(sigma, {2, 2});
}

/// Memory context (sigma_in,M, S_z, S_x) used by the sweep.
inline MemoryContext example2_context(const Example2Config &cfg, double p) {
    return MemoryContext(build_example2_state(cfg, p), pauli_observable('z'), pauli_observable('x'));
}

struct SweepRow {
    double p;
    double concurrence;
    double mutual_info;    // I(in:M) of sigma_in,M
    double leak_no_mem;    // modified IPC of Tr_M sigma_in,M
    double leak_with_mem;  // memory-assisted modified IPC
    double leak_difference;
    double concurrence_norm = 0.0;
    double mutual_info_norm = 0.0;
    double leak_difference_norm = 0.0;
};

struct Example2Result {
    std::vector<SweepRow> rows;
    /// Columns whose grid maximum is zero are left unnormalized.
    bool concurrence_unnormalized = false;
    bool mutual_info_unnormalized = false;
    bool leak_difference_unnormalized = false;
};

inline SweepRow example2_row(const Example2Config &cfg, double p) {
    const MemoryContext mc = example2_context(cfg, p);
    const DensityMatrix &sigma = mc.joint_state();
    SweepRow row{};
    row.p = p;
    row.concurrence = concurrence(sigma);
    row.mutual_info = mutual_information(sigma);
    const double no_mem = ipc_modified(Context(mc.input_state(), mc.x_obs(), mc.y_obs()));
    const double with_mem = new_ipc_mem(mc);
    row.leak_no_mem = no_mem;
    row.leak_with_mem = with_mem;
    row.leak_difference = no_mem - with_mem;
    return row;
}

inline Example2Result run_example2(const Example2Config &cfg) {
    if (cfg.p_grid.empty()) throw Error(ErrorCode::invalid_parameter, "empty p grid");
    Example2Result r;
    for (double p : cfg.p_grid) r.rows.push_back(example2_row(cfg, p));

    auto normalize = [&](double SweepRow::*src, double SweepRow::*dst, bool &flag) {
        double m = 0.0;
        for (const auto &row : r.rows) m = std::max(m, row.*src);
        flag = !(m > 1e-15);
        for (auto &row : r.rows) row.*dst = flag ? row.*src : row.*src / m;
    };
    normalize(&SweepRow::concurrence, &SweepRow::concurrence_norm, r.concurrence_unnormalized);
    normalize(&SweepRow::mutual_info, &SweepRow::mutual_info_norm, r.mutual_info_unnormalized);
    normalize(&SweepRow::leak_difference, &SweepRow::leak_difference_norm, r.leak_difference_unnormalized);
    return r;
}

/// Root of 2 p sqrt(a' b') = (1 - p)/2, where the sweep state stops being
/// entangled: p* = (sqrt(4 + 48 (alpha - 1/2)^2) - 1) / 3.
inline double concurrence_zero_crossing(double alpha) {
    const double c = alpha - 0.5;
    return (std::sqrt(4.0 + 48.0 * c * c) - 1.0) / 3.0;
}

struct MonotonicityReport {
    bool concurrence_nondecreasing = true;
    bool mutual_info_nondecreasing = true;
    bool leak_difference_nondecreasing = true;
    bool leak_with_mem_nonincreasing = true;
    std::optional<SweepRow> counterexample;  // first row that breaks a trend

    bool all_monotone() const {
        return concurrence_nondecreasing && mutual_info_nondecreasing && leak_difference_nondecreasing &&
               leak_with_mem_nonincreasing;
    }
};

/// Checks that memory correlations and the leak reduction grow together along
/// the grid while the memory-assisted leak shrinks. With resort = false a
/// grid that is not ascending is an error.
inline MonotonicityReport probe_conjecture(Example2Config cfg, bool resort = false) {
    if (!std::is_sorted(cfg.p_grid.begin(), cfg.p_grid.end())) {
        if (!resort) throw Error(ErrorCode::invalid_parameter, "p grid must be ascending");
        std::sort(cfg.p_grid.begin(), cfg.p_grid.end());
    }
    const auto result = run_example2(cfg);
    constexpr double slack = 1e-9;
    MonotonicityReport rep;
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const auto &a = result.rows[i - 1];
        const auto &b = result.rows[i];
        bool broken = false;
        if (b.concurrence < a.concurrence - slack) rep.concurrence_nondecreasing = false, broken = true;
        if (b.mutual_info < a.mutual_info - slack) rep.mutual_info_nondecreasing = false, broken = true;
        if (b.leak_difference < a.leak_difference - slack) rep.leak_difference_nondecreasing = false, broken = true;
        if (b.leak_with_mem > a.leak_with_mem + slack) rep.leak_with_mem_nonincreasing = false, broken = true;
        if (broken && !rep.counterexample) rep.counterexample = b;
    }
    return rep;
}

}  // namespace ctxinc
