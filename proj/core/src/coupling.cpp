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

#include "fewatom/coupling.hpp"

#include "fewatom/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace fewatom {

namespace {

constexpr double kUnitTolerance = 1e-12;

}  // namespace

void AtomConfiguration::validate() const {
    if (positions.empty()) {
        throw InvalidArgument("configuration has no atoms");
    }
    if (dipoles.size() != positions.size()) {
        throw InvalidArgument("configuration has " + std::to_string(positions.size()) + " positions but " +
                              std::to_string(dipoles.size()) + " dipoles");
    }
    for (std::size_t i = 0; i < dipoles.size(); ++i) {
        if (!positions[i].allFinite() || !dipoles[i].allFinite()) {
            throw InvalidArgument("atom " + std::to_string(i) + " has non-finite coordinates");
        }
        if (std::abs(dipoles[i].norm() - 1.0) > kUnitTolerance) {
            throw InvalidArgument("dipole " + std::to_string(i) + " is not a unit vector");
        }
    }
    if (pumped_index >= positions.size()) {
        throw InvalidArgument("pumped index " + std::to_string(pumped_index) + " out of range");
    }
    if (!(pump_W >= 0.0) || !std::isfinite(pump_W)) {
        throw InvalidArgument("pump intensity W must be finite and >= 0");
    }
    if (!(gamma_ca > 0.0) || !std::isfinite(gamma_ca)) {
        throw InvalidArgument("gamma_ca must be finite and > 0");
    }
}

Eigen::Matrix3cd green_tensor(double k, const Vec3& r) {
    const double dist = r.norm();
    if (!(dist > 0.0)) {
        throw CoincidentAtoms();
    }
    using namespace std::complex_literals;
    const double xi = k * dist;
    const Vec3 rhat = r / dist;
    const std::complex<double> prefactor = std::exp(1i * xi) / (4.0 * std::numbers::pi * dist);
    const std::complex<double> transverse = 1.0 + 1i / xi - 1.0 / (xi * xi);
    const std::complex<double> longitudinal = -1.0 - 3.0i / xi + 3.0 / (xi * xi);

    Eigen::Matrix3cd g = transverse * Eigen::Matrix3cd::Identity();
    g += longitudinal * (rhat * rhat.transpose()).cast<std::complex<double>>();
    return prefactor * g;
}

PairCoupling coupling_pair(const AtomConfiguration& config, std::size_t m, std::size_t n) {
    if (m >= config.size() || n >= config.size()) {
        throw InvalidArgument("atom index out of range");
    }
    if (m == n) {
        throw InvalidArgument("coupling_pair requires m != n; the diagonal is fixed by convention");
    }
    const Eigen::Matrix3cd g = green_tensor(1.0, config.positions[m] - config.positions[n]);
    const Eigen::Vector3cd mu_m = config.dipoles[m].cast<std::complex<double>>();
    const Eigen::Vector3cd mu_n = config.dipoles[n].cast<std::complex<double>>();
    // mu_m . G . mu_n with real dipoles: plain transpose, no conjugation.
    const std::complex<double> projected = mu_m.transpose() * g * mu_n;
    const std::complex<double> c = -3.0 * std::numbers::pi * config.gamma_ca * projected;
    return {c.real(), -2.0 * c.imag()};
}

CouplingMatrices coupling_matrices(const AtomConfiguration& config) {
    config.validate();
    const auto n = static_cast<Eigen::Index>(config.size());
    CouplingMatrices out;
    out.gamma_ca = config.gamma_ca;
    out.delta = Eigen::MatrixXd::Zero(n, n);
    out.gammas = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        out.gammas(m, m) = config.gamma_ca;
        for (Eigen::Index k = m + 1; k < n; ++k) {
            const PairCoupling c = coupling_pair(config, static_cast<std::size_t>(m), static_cast<std::size_t>(k));
            out.delta(m, k) = out.delta(k, m) = c.delta;
            out.gammas(m, k) = out.gammas(k, m) = c.gamma;
        }
    }
    return out;
}

double min_rate_eigenvalue(const CouplingMatrices& couplings) {
    if (couplings.gammas.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(couplings.gammas, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void check_invariants(const CouplingMatrices& couplings) {
    const auto& d = couplings.delta;
    const auto& g = couplings.gammas;
    const double unit = couplings.gamma_ca;
    if (d.rows() != d.cols() || g.rows() != g.cols() || d.rows() != g.rows()) {
        throw InvalidArgument("coupling matrices must be square and of equal size");
    }
    if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-12 * unit ||
        (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * unit) {
        throw PhysicsError("coupling matrices are not symmetric");
    }
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        if (g(i, i) != unit) {
            throw PhysicsError("rate matrix diagonal differs from gamma_ca");
        }
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            if (i != j && std::abs(g(i, j)) > unit * (1.0 + 1e-12)) {
                throw PhysicsError("off-diagonal collective rate exceeds gamma_ca");
            }
        }
    }
    if (min_rate_eigenvalue(couplings) < -1e-10 * unit) {
        throw PhysicsError("rate matrix is not positive semidefinite");
    }
}

}  // namespace fewatom
