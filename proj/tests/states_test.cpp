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

#include "ctxinc/states.hpp"

#include "ctxinc/info.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace ctxinc;

TEST(States, maximally_mixed) {
    EXPECT_TRUE(approx_equal(maximally_mixed(2).matrix(), ComplexMatrix::identity(2) * Complex(0.5), 1e-15));
    EXPECT_TRUE(approx_equal(maximally_mixed(4).matrix(), ComplexMatrix::identity(4) * Complex(0.25), 1e-15));
    EXPECT_NEAR(entropy(maximally_mixed(2)), std::log(2.0), 1e-14);
    try {
        maximally_mixed(0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_dimension);
    }
}

TEST(States, pure_states) {
    EXPECT_TRUE(approx_equal(pure({1.0, 0.0}).matrix(), ComplexMatrix{{1, 0}, {0, 0}}, 1e-15));
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_TRUE(approx_equal(pure({h, h}).matrix(), ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}, 1e-15));
    // Unnormalized input is normalized.
    EXPECT_TRUE(approx_equal(pure({3.0, 0.0}).matrix(), ComplexMatrix{{1, 0}, {0, 0}}, 1e-15));
    try {
        pure({0.0, 0.0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_state);
    }
}

TEST(States, pure_two_qubit_memory_state) {
    // sqrt(a')|l1 l1'> + sqrt(b')|l2 l2'> in the computational basis.
    const double a = 1.0 / 6.0;
    const auto psi = pure({std::sqrt(a), 0.0, 0.0, std::sqrt(1 - a)}, {2, 2});
    EXPECT_EQ(psi.dims(), (SubsystemDims{2, 2}));
    EXPECT_NEAR(entropy(psi), 0.0, 1e-12);
    const std::vector<double> marginal{a, 1 - a};
    EXPECT_TRUE(approx_equal(reduce(psi, {1}).matrix(), ComplexMatrix::diagonal(marginal), 1e-14));
}

TEST(States, from_matrix_validation) {
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix{{1, 0}, {0, 1}}), Error);           // trace 2
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix{{1.5, 0}, {0, -0.5}}), Error);      // negative
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), Error);   // not Hermitian
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::identity(4) * Complex(0.25), {2, 3}), Error);
    const auto ok = DensityMatrix::from_matrix(ComplexMatrix{{0.5 + 1e-11, 0}, {0, 0.5}});
    EXPECT_NEAR(trace(ok.matrix()).real(), 1.0, 1e-15);
}

TEST(States, random_density_rank_and_determinism) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t d = 2 + s % 3;
        const std::size_t rank = 1 + s % d;
        const auto rho = random_density(d, rank, s);
        EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-12);
        const auto spec = oracle::spectrum(rho.matrix());
        const auto above = std::count_if(spec.begin(), spec.end(), [](double l) { return l > 1e-9; });
        EXPECT_EQ(static_cast<std::size_t>(above), rank);
    }
    EXPECT_NEAR(entropy(random_density(2, 1, 5)), 0.0, 1e-9);
    EXPECT_EQ(random_density(3, 2, 42).matrix(), random_density(3, 2, 42).matrix());
    EXPECT_NE(random_density(3, 2, 42).matrix(), random_density(3, 2, 43).matrix());
    try {
        random_density(2, 3, 0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_rank);
    }
}

TEST(States, random_unitary_properties) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const std::size_t d = 1 + s % 6;
        const auto u = random_unitary(d, s);
        EXPECT_LE(max_abs_diff(dagger(u) * u, ComplexMatrix::identity(d)), 1e-9);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> unused;
        EXPECT_NEAR(std::abs(oracle::to_eigen(u).determinant()), 1.0, 1e-9);
    }
    EXPECT_EQ(random_unitary(4, 9), random_unitary(4, 9));
}

TEST(States, ensemble_renormalizes_small_drift_only) {
    const auto a = pure({1.0, 0.0});
    const auto b = pure({0.0, 1.0});
    const Ensemble e({{0.5 + 4e-10, a}, {0.5, b}});
    EXPECT_NEAR(e.members()[0].probability + e.members()[1].probability, 1.0, 1e-15);
    EXPECT_THROW(Ensemble({{0.6, a}, {0.5, b}}), Error);
    EXPECT_THROW(Ensemble({{1.0, a}, {0.0, maximally_mixed(3)}}), Error);
    const Ensemble with_zero({{1.0, a}, {0.0, b}});
    EXPECT_EQ(with_zero.size(), 2u);
}
