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

#include "ctxinc/instruments.hpp"

#include "ctxinc/info.hpp"
#include "ctxinc/sampling.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace ctxinc;

TEST(Instruments, luders_implements_its_observable) {
    EXPECT_TRUE(implements(luders_instrument(pauli_observable('z')), pauli_observable('z')));
    EXPECT_TRUE(implements(luders_instrument(trine_observable()), trine_observable()));
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto obs = random_povm(2 + s % 3, 2 + s % 4, s);
        EXPECT_TRUE(implements(luders_instrument(obs), obs));
    }
}

TEST(Instruments, implements_rejects_mismatched_labels) {
    try {
        implements(luders_instrument(pauli_observable('z')), pauli_observable('x'));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::label_mismatch);
    }
    // Same labels, different effects.
    const Observable relabeled(pauli_observable('z').labels(), pauli_observable('x').effects());
    EXPECT_FALSE(implements(luders_instrument(pauli_observable('z')), relabeled));
}

TEST(Instruments, apply_instrument_drops_zero_branches) {
    const auto e = apply_instrument(luders_instrument(pauli_observable('z')), pure({1.0, 0.0}));
    ASSERT_EQ(e.size(), 1u);
    EXPECT_NEAR(e.members()[0].probability, 1.0, 1e-15);
    EXPECT_THROW(apply_instrument(luders_instrument(pauli_observable('z')), maximally_mixed(3)), Error);
}

TEST(Instruments, naimark_extension_reproduces_effects) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::size_t d = 2 + s % 3;
        const auto obs = random_povm(d, 2 + s % 3, s);
        const auto ext = naimark_extension(obs);
        EXPECT_TRUE(is_isometry(ext.isometry, 1e-9));
        EXPECT_TRUE(is_sharp(ext.pvm));
        for (std::size_t x = 0; x < obs.size(); ++x) {
            const auto back = dagger(ext.isometry) * ext.pvm.effects()[x] * ext.isometry;
            EXPECT_LE(max_abs_diff(back, obs.effects()[x]), 1e-9);
        }
    }
}

TEST(Instruments, parent_instrument_implements_observable) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto obs = random_povm(2 + s % 2, 3, s);
        const auto parent = parent_instrument(obs);
        EXPECT_EQ(parent.name(), "parent");
        EXPECT_TRUE(implements(parent, obs));
        EXPECT_EQ(parent.out_dim(), obs.dim() * obs.size());
    }
    // Sharp rank-one: V = I, so the parent instrument acts like Luders.
    const auto z = pauli_observable('z');
    const auto p = parent_instrument(z);
    EXPECT_EQ(p.out_dim(), 2u);
    for (std::size_t x = 0; x < 2; ++x) EXPECT_TRUE(same_map(p.branches()[x], luders_instrument(z).branches()[x]));
    EXPECT_EQ(parent_instrument(z, {true}).out_dim(), 4u);
}

TEST(Instruments, parent_is_holevo_maximal) {
    // Every instrument implementing the same observable is a post-processing
    // of the parent, so chi cannot exceed the parent's value.
    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::size_t d = 2 + s % 2;
        const auto obs = random_povm(d, 2 + s % 2, s);
        const auto rho = random_density(d, 1 + s % d, s + 500);
        const double parent = holevo_chi(apply_instrument(parent_instrument(obs), rho));
        const double luders = holevo_chi(apply_instrument(luders_instrument(obs), rho));
        const double depol = holevo_chi(apply_instrument(depolarizing_instrument(obs, random_density(d, 2, s)), rho));
        EXPECT_LE(luders, parent + 1e-9);
        EXPECT_NEAR(depol, 0.0, 1e-9);
        const double processed = holevo_chi(apply_instrument(
            post_process(random_channel(parent_instrument(obs).out_dim(), d, 3, s), parent_instrument(obs)), rho));
        EXPECT_LE(processed, parent + 1e-9);
    }
}

TEST(Instruments, depolarizing_instrument) {
    const auto eta = pure({0.6, 0.8});
    const auto inst = depolarizing_instrument(pauli_observable('x'), eta);
    EXPECT_TRUE(implements(inst, pauli_observable('x')));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rho = random_density(2, 2, s);
        const auto out = induced_channel(inst).apply(rho);
        EXPECT_TRUE(approx_equal(out.matrix(), eta.matrix(), 1e-12));
        for (std::size_t y = 0; y < 2; ++y) {
            const double p = trace(rho.matrix() * pauli_observable('x').effects()[y]).real();
            EXPECT_TRUE(approx_equal(inst.branches()[y].apply(rho.matrix()), eta.matrix() * Complex(p), 1e-12));
        }
    }
    // Output dimension follows eta.
    EXPECT_EQ(depolarizing_instrument(pauli_observable('z'), maximally_mixed(3)).out_dim(), 3u);
}

TEST(Instruments, post_process_matches_choi_composition) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto inst = random_instrument(2, 2, s);
        const auto theta = random_channel(inst.out_dim(), 2, 2, s + 7);
        const auto processed = post_process(theta, inst);
        EXPECT_EQ(processed.labels(), inst.labels());
        for (std::size_t x = 0; x < inst.size(); ++x) {
            // Compare action on a basis of matrix units.
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    ComplexMatrix unit(2, 2);
                    unit(a, b) = 1.0;
                    EXPECT_TRUE(approx_equal(processed.branches()[x].apply(unit),
                                             theta.apply(inst.branches()[x].apply(unit)), 1e-12));
                }
        }
    }
    EXPECT_THROW(post_process(identity_channel(3), luders_instrument(pauli_observable('z'))), Error);
}

TEST(Instruments, instrument_validation) {
    const auto z = pauli_observable('z');
    const auto lz = luders_instrument(z);
    // Incomplete: only one branch.
    EXPECT_THROW(Instrument({"0"}, {lz.branches()[0]}, "half"), Error);
    EXPECT_THROW(Instrument({"a", "a"}, lz.branches(), "dup"), Error);
    try {
        KrausMap(2, 2, {ComplexMatrix::identity(2) * Complex(1.1)});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_map);
    }
}
