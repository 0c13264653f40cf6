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

#include "support.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

using namespace fewatom;

namespace {

CouplingMatrices single_atom() {
    AtomConfiguration one;
    one.positions = {Vec3::Zero()};
    one.dipoles = {Vec3::UnitZ()};
    return coupling_matrices(one);
}

}  // namespace

TEST_CASE("without pump the steady state is the ground state") {
    std::mt19937_64 rng(3);
    const AtomConfiguration c = testing::random_configuration(rng, 3);
    const Superoperator L = build_liouvillian(coupling_matrices(c), c.pumped_index, 0.0);
    const DensityMatrix s = steady_state(L);
    CHECK((s.matrix() - DensityMatrix::basis_state(8, 0).matrix()).norm() < 1e-12);
}

TEST_CASE("single pumped atom") {
    const CouplingMatrices m = single_atom();
    for (const double W : {0.5, 1.0, 3.0, 10.0}) {
        CAPTURE(W);
        const DensityMatrix s = steady_state(build_liouvillian(m, 0, W));
        const double p = W / (1.0 + W);
        CHECK(std::abs(excited_population(s, 0) - p) < 1e-10);
        CHECK(std::abs(pump_absorption_rate(s, W, 0) - W * (1.0 - p)) < 1e-10);
        CHECK(std::abs(emission_rate(s, m) - p) < 1e-10);
        CHECK(std::abs(s.matrix()(0, 1)) < 1e-14);
    }
    const DensityMatrix s3 = steady_state(build_liouvillian(m, 0, 3.0));
    const ProductBasis basis(1);
    const SparseMatrix ground = lowering_operator(basis, 0) * raising_operator(basis, 0);
    CHECK(std::abs(expectation(s3, ground) - 0.25) < 1e-12);
    CHECK(std::abs(expectation(s3, Eigen::MatrixXcd(ground)) - 0.25) < 1e-12);
}

TEST_CASE("distant atoms decouple") {
    AtomConfiguration c;
    c.positions = {Vec3::Zero(), Vec3(1000.0, 0.0, 0.0)};
    c.dipoles = {Vec3::UnitZ(), Vec3::UnitZ()};
    const double W = 2.0;
    const DensityMatrix s = steady_state(build_liouvillian(coupling_matrices(c), 0, W));
    CHECK(std::abs(excited_population(s, 0) - W / (1.0 + W)) < 1e-5);
    CHECK(excited_population(s, 1) < 1e-5);
}

TEST_CASE("steady state properties on random configurations") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        const AtomConfiguration c = testing::random_configuration(rng, n);
        const CouplingMatrices m = coupling_matrices(c);
        const double W = std::array{0.1, 1.0, 10.0}[static_cast<std::size_t>(trial % 3)];
        const Superoperator L = build_liouvillian(m, c.pumped_index, W);
        const DensityMatrix s = steady_state(L);

        CHECK(steady_residual(L, s) < 1e-10);
        CHECK(std::abs(s.trace() - 1.0) < 1e-12);
        CHECK(s.hermiticity_error() < 1e-14);
        CHECK(s.min_eigenvalue() > -1e-10);
        CHECK(stationary_nullity(L) == 1);
        // photons in = photons out
        CHECK(std::abs(pump_absorption_rate(s, W, c.pumped_index) - emission_rate(s, m)) < 1e-8);
    }
}

TEST_CASE("steady state is a fixed point of the evolution") {
    std::mt19937_64 rng(37);
    const AtomConfiguration c = testing::random_configuration(rng, 2);
    const Superoperator L = build_liouvillian(coupling_matrices(c), c.pumped_index, 1.5);
    const DensityMatrix s = steady_state(L);
    const Eigen::MatrixXcd propagator = (Eigen::MatrixXcd(L.matrix()) * 10.0).exp();
    const Eigen::VectorXcd v = vectorize(s.matrix());
    CHECK((propagator * v - v).norm() < 1e-10);
}

TEST_CASE("dark subspace makes the steady state non-unique") {
    CouplingMatrices m;
    m.delta = Eigen::MatrixXd::Zero(2, 2);
    m.gammas = Eigen::MatrixXd::Ones(2, 2);
    const Superoperator L = build_liouvillian(m, 0, 0.0);
    CHECK(stationary_nullity(L) > 1);
    CHECK_THROWS_AS(steady_state(L), NonUniqueSteadyState);
}

TEST_CASE("dimension mismatches are rejected") {
    const CouplingMatrices m = single_atom();
    const Superoperator L = build_liouvillian(m, 0, 1.0);
    const DensityMatrix wrong = DensityMatrix::basis_state(4, 0);
    CHECK_THROWS_AS(steady_residual(L, wrong), InvalidArgument);
    CHECK_THROWS_AS(expectation(wrong, Eigen::MatrixXcd::Identity(2, 2)), InvalidArgument);
    CHECK_THROWS_AS(emission_rate(wrong, m), InvalidArgument);
    CHECK_THROWS_AS(excited_population(DensityMatrix(Eigen::MatrixXcd::Identity(3, 3)), 0), InvalidArgument);
}
