// Copyright 2026 The fewatom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fewatom/fewatom.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fewatom::testing {

// Pumped atom at the origin, the others on a regular polygon of radius L in
// the xy-plane, all dipoles along z.
inline AtomConfiguration centred_ring(std::size_t n, double L, double W = 0.0) {
    AtomConfiguration c;
    c.positions.push_back(Vec3::Zero());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1);
        c.positions.push_back(L * Vec3(std::cos(a), std::sin(a), 0.0));
    }
    c.dipoles.assign(n, Vec3::UnitZ());
    c.pump_W = W;
    return c;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec3 v;
    do {
        v = Vec3(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-3);
    return v.normalized();
}

// Atoms in a box of side `box`, pairwise separation at least `min_sep`.
inline AtomConfiguration random_configuration(std::mt19937_64& rng, std::size_t n, double box = 2.0,
                                              double min_sep = 0.3) {
    std::uniform_real_distribution<double> u(0.0, box);
    AtomConfiguration c;
    while (c.positions.size() < n) {
        const Vec3 p(u(rng), u(rng), u(rng));
        bool ok = true;
        for (const auto& q : c.positions) {
            ok = ok && (p - q).norm() >= min_sep;
        }
        if (ok) {
            c.positions.push_back(p);
            c.dipoles.push_back(random_unit(rng));
        }
    }
    c.pumped_index = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    return c;
}

inline Eigen::MatrixXcd random_density(std::mt19937_64& rng, Eigen::Index dim) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a(i) = cplx(g(rng), g(rng));
    }
    Eigen::MatrixXcd rho = a * a.adjoint();
    return rho / rho.trace();
}

inline double single_atom_photon_number(double W) { return W / (2.0 * (1.0 + W) * (1.0 + W)); }

}  // namespace fewatom::testing
