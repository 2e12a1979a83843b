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

// Seeded random measurements, channels and instruments for property suites.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ctxinc/instruments.hpp"
#include "ctxinc/maps.hpp"
#include "ctxinc/measurements.hpp"
#include "ctxinc/states.hpp"

namespace ctxinc {

/// n-outcome POVM E_x = S^{-1/2} G_x S^{-1/2}, G_x Ginibre PSD, S = sum G_x.
inline Observable random_povm(std::size_t d, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ComplexMatrix> g;
    ComplexMatrix s(d, d);
    for (std::size_t x = 0; x < n; ++x) {
        const ComplexMatrix a = gaussian_matrix(d, d, rng);
        g.push_back(a * dagger(a));
        s += g.back();
    }
    const ComplexMatrix w = inverse_sqrt_pd(s);
    std::vector<ComplexMatrix> effects;
    for (const auto &gx : g) effects.push_back(hermitian_part(w * gx * w));
    // Absorb roundoff in the completeness relation into the last effect.
    ComplexMatrix total(d, d);
    for (std::size_t x = 0; x + 1 < n; ++x) total += effects[x];
    effects.back() = ComplexMatrix::identity(d) - total;
    return Observable(std::move(effects));
}

/// Rank-one PVM onto a Haar-random basis.
inline Observable random_rank_one_pvm(std::size_t d, std::uint64_t seed) {
    return basis_observable(random_unitary(d, seed));
}

/// Random channel from a Ginibre isometry d_in -> d_out * n_kraus split into
/// n_kraus Kraus blocks.
inline Channel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    if (d_out * n_kraus < d_in) n_kraus = (d_in + d_out - 1) / d_out;
    const ComplexMatrix v = orthonormal_columns(gaussian_matrix(d_out * n_kraus, d_in, rng));
    std::vector<ComplexMatrix> kraus;
    for (std::size_t k = 0; k < n_kraus; ++k) {
        ComplexMatrix block(d_out, d_in);
        for (std::size_t i = 0; i < d_out; ++i)
            for (std::size_t j = 0; j < d_in; ++j) block(i, j) = v(k * d_out + i, j);
        kraus.push_back(std::move(block));
    }
    return Channel(KrausMap(d_in, d_out, std::move(kraus)), "random");
}

/// Parent instrument of a random POVM followed by a random unitary channel.
inline Instrument random_instrument(std::size_t d, std::size_t n, std::uint64_t seed) {
    const Instrument parent = parent_instrument(random_povm(d, n, derive_seed(seed, 1, 0)));
    return post_process(unitary_channel(random_unitary(parent.out_dim(), derive_seed(seed, 2, 0))), parent);
}

/// Ensemble of n random states of mixed ranks with random weights.
inline Ensemble random_ensemble(std::size_t d, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto &x : w) sum += (x = unit(rng));
    std::vector<EnsembleMember> members;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t rank = 1 + static_cast<std::size_t>(rng() % d);
        members.push_back({w[k] / sum, random_density(d, rank, rng())});
    }
    return Ensemble(std::move(members));
}

}  // namespace ctxinc
