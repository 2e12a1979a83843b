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

#include "ctxinc/scenarios.hpp"

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace ctxinc;

namespace {

const double kLn2 = std::log(2.0);
const double kH = 0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0);

// Joint state after Alice's S_z measurement on A, built entrywise.
ComplexMatrix dephase_a(const ComplexMatrix &sigma) {
    ComplexMatrix out(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i / 2 == j / 2) out(i, j) = sigma(i, j);
    return out;
}

double oracle_mutual_info(const ComplexMatrix &am) {
    return oracle::entropy(oracle::trace_out_second(am, 2, 2)) + oracle::entropy(oracle::trace_out_first(am, 2, 2)) -
           oracle::entropy(am);
}

}  // namespace

TEST(Example1, averages) {
    const auto r = run_example1();
    EXPECT_NEAR(r.old_avg, 0.0, 1e-9);
    EXPECT_NEAR(r.new_avg, 0.5 * kLn2, 1e-9);
    EXPECT_NEAR(r.new_avg, 0.34657359027997264, 1e-12);
    ASSERT_EQ(r.entries.size(), 4u);
    for (const auto &e : r.entries) EXPECT_NEAR(e.new_value, e.x_axis == e.y_axis ? 0.0 : kLn2, 1e-9);
}

TEST(Example1, depolarizing_eve_leaks_more) {
    for (const auto &eta : {pure({1.0, 0.0}), maximally_mixed(2), random_density(2, 2, 4)}) {
        EXPECT_GE(run_example1_depolarizing_eve(eta), 0.5 * kLn2 - 1e-9);
    }
    // Every branch state is wiped out, so the leak is Alice's full chi.
    EXPECT_NEAR(run_example1_depolarizing_eve(pure({1.0, 0.0})), kLn2, 1e-9);
}

TEST(Example2, alpha_prime) {
    EXPECT_NEAR(alpha_prime(0.25, 1.0), 0.25, 1e-15);
    EXPECT_NEAR(alpha_prime(0.25, 0.75), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(alpha_prime(0.25, 0.5), 0.0, 1e-15);
    for (double p = 0.5; p <= 1.0; p += 0.05) EXPECT_NEAR(alpha_prime(0.25, p), (2 * p - 1) / (4 * p), 1e-15);
    try {
        alpha_prime(0.25, 0.3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_parameter);
    }
}

TEST(Example2, state_marginal) {
    const auto cfg = default_example2_config();
    const ComplexMatrix u = basis_matrix(cfg.eigenbasis);
    const std::vector<double> target{0.25, 0.75};
    const ComplexMatrix expected = u * ComplexMatrix::diagonal(target) * dagger(u);
    for (double p : cfg.p_grid) {
        const auto sigma = build_example2_state(cfg, p);
        EXPECT_LE(max_abs_diff(oracle::trace_out_second(sigma.matrix(), 2, 2), expected), 1e-9);
    }
    EXPECT_NEAR(entropy(build_example2_state(cfg, 1.0)), 0.0, 1e-9);
}

TEST(Example2, post_alice_marginals) {
    const auto cfg = default_example2_config();
    for (double p : cfg.p_grid) {
        const auto t = memory_trajectory(example2_context(cfg, p));
        const ComplexMatrix a = oracle::trace_out_second(t.after_alice.matrix(), 2, 2);
        EXPECT_LE(max_abs_diff(a, ComplexMatrix::identity(2) * Complex(0.5)), 1e-9);
        const ComplexMatrix m = oracle::trace_out_first(t.after_alice.matrix(), 2, 2);
        EXPECT_LE(max_abs_diff(t.after_eve.matrix(), kron(ComplexMatrix::identity(2) * Complex(0.5), m)), 1e-9);
    }
}

TEST(Example2, sweep_matches_post_alice_mutual_information) {
    const auto cfg = default_example2_config();
    const auto r = run_example2(cfg);
    ASSERT_EQ(r.rows.size(), 101u);
    for (const auto &row : r.rows) {
        const auto sigma = build_example2_state(cfg, row.p).matrix();
        EXPECT_NEAR(row.leak_difference, oracle_mutual_info(dephase_a(sigma)), 1e-9) << "p = " << row.p;
        EXPECT_NEAR(row.mutual_info, oracle_mutual_info(sigma), 1e-9);
        EXPECT_NEAR(row.leak_difference, row.leak_no_mem - row.leak_with_mem, 1e-12);
        EXPECT_GE(row.leak_difference, -1e-9);
        const auto gap = memory_gap(example2_context(cfg, row.p));
        EXPECT_NEAR(row.leak_difference, gap.new_gap, 1e-12);
    }
    EXPECT_NEAR(r.rows.back().leak_difference, kH, 1e-9);
    // At p = 1/2 the pure part is a product state, so Alice's dephasing leaves
    // A and M uncorrelated. Just above, the leak difference is positive while
    // the state is still separable.
    EXPECT_NEAR(r.rows.front().concurrence, 0.0, 1e-12);
    EXPECT_NEAR(r.rows.front().leak_difference, 0.0, 1e-12);
    EXPECT_GT(r.rows.front().mutual_info, 0.05);
    const double p_star = concurrence_zero_crossing(cfg.alpha);
    std::size_t separable_with_gap = 0;
    for (const auto &row : r.rows) {
        if (row.p <= 0.5 || row.p >= p_star) continue;
        EXPECT_NEAR(row.concurrence, 0.0, 1e-12);
        EXPECT_GT(row.leak_difference, 1e-4) << "p = " << row.p;
        ++separable_with_gap;
    }
    EXPECT_EQ(separable_with_gap, 9u);
    EXPECT_NEAR(r.rows.back().concurrence_norm, 1.0, 1e-12);
    EXPECT_FALSE(r.concurrence_unnormalized);
}

TEST(Example2, old_memory_measure_at_pure_point) {
    const auto mc = example2_context(default_example2_config(), 1.0);
    EXPECT_NEAR(old_ipc_mem(mc), kH, 1e-9);
    EXPECT_NEAR(memory_gap(mc).new_gap, kH, 1e-9);
}

TEST(Example2, concurrence_zero_crossing_by_bisection) {
    const auto cfg = default_example2_config();
    double lo = 0.5, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (concurrence(build_example2_state(cfg, mid)) > 1e-12 ? hi : lo) = mid;
    }
    EXPECT_NEAR(concurrence_zero_crossing(0.25), 0.5 * (lo + hi), 1e-6);
    EXPECT_NEAR(concurrence_zero_crossing(0.25), (std::sqrt(7.0) - 1.0) / 3.0, 1e-12);
    EXPECT_LT(concurrence_zero_crossing(0.25), 0.549);
}

TEST(Example2, conjecture_probe) {
    const auto cfg = default_example2_config();
    const auto rep = probe_conjecture(cfg);
    EXPECT_TRUE(rep.all_monotone());
    EXPECT_FALSE(rep.counterexample.has_value());

    Example2Config single = cfg;
    single.p_grid = {0.7};
    EXPECT_TRUE(probe_conjecture(single).all_monotone());

    Example2Config reversed = cfg;
    std::reverse(reversed.p_grid.begin(), reversed.p_grid.end());
    EXPECT_THROW(probe_conjecture(reversed), Error);
    EXPECT_TRUE(probe_conjecture(reversed, true).all_monotone());
}

TEST(Example2, grid_and_config_errors) {
    EXPECT_THROW(uniform_grid(0.5, 1.0, 0), Error);
    const auto g = uniform_grid(0.5, 1.0, 101);
    EXPECT_EQ(g.front(), 0.5);
    EXPECT_EQ(g.back(), 1.0);
    Example2Config empty = default_example2_config();
    empty.p_grid.clear();
    EXPECT_THROW(run_example2(empty), Error);
}
