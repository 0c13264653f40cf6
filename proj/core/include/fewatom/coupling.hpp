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

// Dipole-dipole coupling of identical two-level atoms in vacuum.
//
// Units: lengths in c/omega_ca (inverse resonant wavenumber), rates and
// frequency offsets in units of the single-atom decay rate gamma_ca. The
// transition frequency itself never appears; all frequencies are detunings
// from omega_ca.

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace fewatom {

using Vec3 = Eigen::Vector3d;

struct AtomConfiguration {
    std::vector<Vec3> positions;  // units of c/omega_ca
    std::vector<Vec3> dipoles;    // unit vectors
    std::size_t pumped_index = 0;
    double pump_W = 0.0;
    double gamma_ca = 1.0;

    std::size_t size() const noexcept { return positions.size(); }

    /// Throws InvalidArgument on shape errors, non-unit dipoles (tolerance
    /// 1e-12), a pumped index out of range, W < 0 or gamma_ca <= 0.
    /// Coincident atoms are a physics error and surface from coupling_matrices().
    void validate() const;
};

/// Collective shifts and rates. `delta` has a zero diagonal (rotating frame at
/// omega_ca); `gammas` has gamma_ca on the diagonal.
struct CouplingMatrices {
    Eigen::MatrixXd delta;
    Eigen::MatrixXd gammas;
    double gamma_ca = 1.0;

    std::size_t size() const noexcept { return static_cast<std::size_t>(gammas.rows()); }
};

struct PairCoupling {
    double delta = 0.0;
    double gamma = 0.0;
};

/// Free-space dyadic Green tensor
///   G0 = e^{i xi} / (4 pi |r|) [ (1 + i/xi - 1/xi^2) I + (-1 - 3i/xi + 3/xi^2) r^ r^ ],
/// xi = k |r|. Throws CoincidentAtoms for r = 0.
Eigen::Matrix3cd green_tensor(double k, const Vec3& r);

/// (delta^{mn}, Gamma^{mn}) for m != n from
///   delta - (i/2) Gamma = -3 pi (gamma_ca / k) mu_m . G0(k, r_m - r_n) . mu_n,  k = 1.
/// The overall minus sign selects the convention with Gamma -> +gamma_ca and
/// delta -> +3 gamma_ca / (4 xi^3) for parallel transverse dipoles as xi -> 0.
PairCoupling coupling_pair(const AtomConfiguration& config, std::size_t m, std::size_t n);

/// Full N x N matrices. Throws InvalidArgument for an invalid configuration,
/// CoincidentAtoms for overlapping atoms.
CouplingMatrices coupling_matrices(const AtomConfiguration& config);

/// Smallest eigenvalue of the rate matrix.
double min_rate_eigenvalue(const CouplingMatrices& couplings);

/// Throws PhysicsError unless both matrices are symmetric (1e-12), the rate
/// diagonal equals gamma_ca, off-diagonal rates are bounded by gamma_ca and the
/// rate matrix is positive semidefinite (eigenvalues >= -1e-10 gamma_ca).
void check_invariants(const CouplingMatrices& couplings);

}  // namespace fewatom
