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

#include "ctxinc/measurements.hpp"

#include "ctxinc/sampling.hpp"
#include "gtest/gtest.h"

using namespace ctxinc;

namespace {
const ComplexMatrix P0{{1, 0}, {0, 0}};
const ComplexMatrix P1{{0, 0}, {0, 1}};
}  // namespace

TEST(Measurements, validate_reports) {
    EXPECT_TRUE(validate(pauli_observable('z')).valid());
    EXPECT_TRUE(is_sharp(pauli_observable('z')));

    const std::vector<double> w{0.6, 0.4};
    const auto trivial = trivial_observable(2, w);
    EXPECT_TRUE(validate(trivial).valid());
    EXPECT_FALSE(is_sharp(trivial));

    const std::vector<ComplexMatrix> doubled{P0, P0};
    const auto report = validate_effects(doubled);
    EXPECT_FALSE(report.complete);
    EXPECT_TRUE(report.hermitian);
    EXPECT_TRUE(report.positive);
    EXPECT_NEAR(report.completeness_violation, 1.0, 1e-15);
    EXPECT_THROW(Observable{doubled}, Error);
}

TEST(Measurements, validate_rejects_perturbed_effects) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto effects = random_povm(2 + s % 2, 3, s).effects();
        effects[0] += ComplexMatrix::identity(effects[0].rows()) * Complex(2e-6);
        const auto report = validate_effects(effects);
        EXPECT_FALSE(report.valid());
        EXPECT_GT(report.completeness_violation, 1e-6);
    }
    EXPECT_TRUE(validate(trine_observable()).valid());
    for (char a : {'x', 'y', 'z'}) EXPECT_TRUE(validate(pauli_observable(a)).valid());
}

TEST(Measurements, sharp_and_rank_one_flags) {
    EXPECT_TRUE(is_sharp(pauli_observable('x')));
    EXPECT_TRUE(is_rank_one(pauli_observable('x')));
    const std::vector<double> half{0.5, 0.5};
    EXPECT_FALSE(is_sharp(trivial_observable(2, half)));
    const auto trine = trine_observable();
    EXPECT_FALSE(is_sharp(trine));
    EXPECT_TRUE(is_rank_one(trine));
    // (2/3 P)^2 = 4/9 P differs from 2/3 P by 2/9 in the nonzero block.
    const auto &e = trine.effects()[0];
    EXPECT_NEAR(max_abs_diff(e * e, e), 2.0 / 9.0, 1e-12);
    // Sharp but rank two.
    const auto id3 = ComplexMatrix::identity(3);
    ComplexMatrix p01(3, 3), p2(3, 3);
    p01(0, 0) = p01(1, 1) = 1.0;
    p2(2, 2) = 1.0;
    const Observable coarse({p01, p2});
    EXPECT_TRUE(is_sharp(coarse));
    EXPECT_FALSE(is_rank_one(coarse));
}

TEST(Measurements, commutes) {
    EXPECT_TRUE(commutes(pauli_observable('z'), pauli_observable('z')));
    EXPECT_FALSE(commutes(pauli_observable('z'), pauli_observable('x')));
    const std::vector<double> half{0.5, 0.5};
    EXPECT_TRUE(commutes(pauli_observable('z'), trivial_observable(2, half)));
    EXPECT_THROW(commutes(pauli_observable('z'), random_povm(3, 2, 1)), Error);
}

TEST(Measurements, marginals_of_joint) {
    // G(x, y) = Z_x delta_xy.
    const Observable diag({pair_label("0", "0"), pair_label("0", "1"), pair_label("1", "0"), pair_label("1", "1")},
                          {P0, ComplexMatrix(2, 2), ComplexMatrix(2, 2), P1});
    const auto [a, b] = marginals_of_joint(diag);
    EXPECT_EQ(a.labels(), (std::vector<std::string>{"0", "1"}));
    EXPECT_TRUE(approx_equal(a.effects()[0], P0) && approx_equal(a.effects()[1], P1));
    EXPECT_TRUE(approx_equal(b.effects()[0], P0) && approx_equal(b.effects()[1], P1));

    // G(x, y) = p(y) A(x): second marginal is trivial.
    const auto trine = trine_observable();
    std::vector<std::string> labels;
    std::vector<ComplexMatrix> effects;
    const std::vector<double> py{0.3, 0.7};
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 2; ++y) {
            labels.push_back(pair_label(std::to_string(x), std::to_string(y)));
            effects.push_back(trine.effects()[x] * Complex(py[y]));
        }
    const auto [ta, tb] = marginals_of_joint(Observable(labels, effects));
    for (std::size_t x = 0; x < 3; ++x) EXPECT_TRUE(approx_equal(ta.effects()[x], trine.effects()[x]));
    for (std::size_t y = 0; y < 2; ++y)
        EXPECT_TRUE(approx_equal(tb.effects()[y], ComplexMatrix::identity(2) * Complex(py[y])));
}

TEST(Measurements, marginals_consistent_with_born_rule) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto g = random_povm(2 + s % 2, 6, s);
        std::vector<std::string> labels;
        for (std::size_t x = 0; x < 3; ++x)
            for (std::size_t y = 0; y < 2; ++y) labels.push_back(pair_label(std::to_string(x), std::to_string(y)));
        const Observable joint(labels, g.effects());
        const auto [a, b] = marginals_of_joint(joint);
        EXPECT_TRUE(validate(a).valid());
        EXPECT_TRUE(validate(b).valid());
        const auto rho = random_density(joint.dim(), 1 + s % joint.dim(), s + 1000);
        const auto pg = born_probabilities(rho, joint);
        const auto pa = born_probabilities(rho, a);
        for (std::size_t x = 0; x < 3; ++x) EXPECT_NEAR(pg[2 * x] + pg[2 * x + 1], pa[x], 1e-12);
    }
}

TEST(Measurements, marginals_reject_non_grid_labels) {
    try {
        marginals_of_joint(pauli_observable('z'));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_labels);
    }
    const Observable partial({pair_label("0", "0"), pair_label("0", "1"), pair_label("1", "0")},
                             {P0, ComplexMatrix(2, 2), P1});
    EXPECT_THROW(marginals_of_joint(partial), Error);
}

TEST(Measurements, born_probabilities) {
    const auto z = pauli_observable('z');
    const auto x = pauli_observable('x');
    auto p = born_probabilities(maximally_mixed(2), z);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
    p = born_probabilities(pure({1.0, 0.0}), z);
    EXPECT_NEAR(p[0], 1.0, 1e-15);
    EXPECT_NEAR(p[1], 0.0, 1e-15);
    p = born_probabilities(pure({1.0, 0.0}), x);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
    EXPECT_THROW(born_probabilities(maximally_mixed(3), z), Error);
}

TEST(Measurements, luders_channel) {
    const auto nz = luders_channel(pauli_observable('z'));
    const auto nx = luders_channel(pauli_observable('x'));
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_TRUE(approx_equal(nz.apply(pure({h, h})).matrix(), maximally_mixed(2).matrix(), 1e-15));
    EXPECT_TRUE(approx_equal(nz.apply(pure({1.0, 0.0})).matrix(), P0, 1e-15));
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto rho = random_density(2, 1 + s % 2, s);
        EXPECT_TRUE(approx_equal(nx.apply(nz.apply(rho)).matrix(), maximally_mixed(2).matrix(), 1e-12));
    }
    const std::vector<double> half{0.5, 0.5};
    try {
        luders_channel(trivial_observable(2, half));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::requires_sharp);
    }
}

TEST(Measurements, luders_channel_is_idempotent) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto n = luders_channel(random_rank_one_pvm(2 + s % 3, s));
        EXPECT_TRUE(same_map(compose(n, n).map(), n.map()));
    }
}

TEST(Measurements, model_to_instrument_cnot) {
    // Ancilla |0>, CNOT with the system as control, pointer sigma_z on the ancilla.
    const ComplexMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    const MeasurementModel model{2, pure({1.0, 0.0}), cnot, pauli_observable('z')};
    const auto inst = model_to_instrument(model);
    ASSERT_EQ(inst.size(), 2u);
    // Explicit 4x4 evaluation: Phi_0(rho) = |0><0| rho |0><0|, Phi_1(rho) = |1><1| rho |1><1|.
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rho = random_density(2, 2, s).matrix();
        EXPECT_TRUE(approx_equal(inst.branches()[0].apply(rho), P0 * rho * P0, 1e-14));
        EXPECT_TRUE(approx_equal(inst.branches()[1].apply(rho), P1 * rho * P1, 1e-14));
    }
}

TEST(Measurements, model_to_instrument_identity_model) {
    const auto one = ComplexMatrix::identity(1);
    const MeasurementModel model{2, maximally_mixed(1), ComplexMatrix::identity(2), Observable({one})};
    const auto inst = model_to_instrument(model);
    ASSERT_EQ(inst.size(), 1u);
    EXPECT_TRUE(same_map(inst.branches()[0], identity_channel(2).map()));
}

TEST(Measurements, model_to_instrument_matches_pointer_statistics) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::size_t ds = 2;
        const std::size_t da = 2 + s % 2;
        const auto ancilla = random_density(da, 1 + s % da, s);
        const auto u = random_unitary(ds * da, s + 1);
        const auto pointer = random_rank_one_pvm(da, s + 2);
        const MeasurementModel model{ds, ancilla, u, pointer};
        const auto inst = model_to_instrument(model);
        const auto rho = random_density(ds, 2, s + 3);
        const auto joint = u * kron(rho.matrix(), ancilla.matrix()) * dagger(u);
        ComplexMatrix total(ds, ds);
        for (std::size_t x = 0; x < pointer.size(); ++x) {
            const double rhs = trace(joint * kron(ComplexMatrix::identity(ds), pointer.effects()[x])).real();
            const double lhs = trace(inst.branches()[x].apply(rho.matrix())).real();
            EXPECT_NEAR(lhs, rhs, 1e-9);
            total += inst.branches()[x].apply(rho.matrix());
        }
        // Induced channel equals Tr_a[U (rho (x) sigma_a) U^dagger].
        EXPECT_TRUE(approx_equal(total, partial_trace(joint, {ds, da}, {0}), 1e-9));
    }
}

TEST(Measurements, model_to_instrument_rejects_unsharp_pointer) {
    const MeasurementModel model{2, pure({1.0, 0.0}), ComplexMatrix::identity(4), trine_observable()};
    try {
        model_to_instrument(model);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported_pointer);
    }
}
