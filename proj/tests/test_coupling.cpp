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

#include <Eigen/Geometry>

using namespace fewatom;

namespace {

AtomConfiguration pair(double xi, const Vec3& d0, const Vec3& d1, const Vec3& axis = Vec3::UnitX()) {
    AtomConfiguration c;
    c.positions = {Vec3::Zero(), xi * axis};
    c.dipoles = {d0, d1};
    return c;
}

// Reference values from an independent 30-digit evaluation of the closed forms.
struct Reference {
    double xi;
    bool transverse;
    double gamma;
    double delta;
};

}  // namespace

TEST_CASE("pair coupling matches high-precision reference values") {
    const Reference refs[] = {
        {0.7, true, 0.904541591579822716, 1.838969161621296286},
        {0.7 * std::sqrt(3.0), true, 0.728329461233215889, 0.408422963104852530},
        {100.0, true, -0.00746537723734157, -0.00650472222608665},
        {0.7, false, 0.951849762144745, -5.31688586742364},
    };
    for (const auto& r : refs) {
        CAPTURE(r.xi);
        const Vec3 d = r.transverse ? Vec3::UnitZ() : Vec3::UnitX();
        const PairCoupling p = coupling_pair(pair(r.xi, d, d), 0, 1);
        CHECK(p.gamma == doctest::Approx(r.gamma).epsilon(1e-12));
        CHECK(p.delta == doctest::Approx(r.delta).epsilon(1e-12));
    }
    const PairCoupling far = coupling_pair(pair(1000.0, Vec3::UnitZ(), Vec3::UnitZ()), 0, 1);
    CHECK(far.gamma == doctest::Approx(0.00124116163909313).epsilon(1e-10));
}

TEST_CASE("near-field limits") {
    for (const double xi : {1e-2, 1e-3}) {
        const PairCoupling p = coupling_pair(pair(xi, Vec3::UnitZ(), Vec3::UnitZ()), 0, 1);
        CHECK(std::abs(p.gamma - 1.0) < xi * xi);
        CHECK(std::abs(p.delta * xi * xi * xi - 0.75) < xi * xi);
    }
}

TEST_CASE("orthogonal dipoles do not couple along a principal axis") {
    const PairCoupling p = coupling_pair(pair(0.9, Vec3::UnitX(), Vec3::UnitZ()), 0, 1);
    CHECK(std::abs(p.gamma) < 1e-15);
    CHECK(std::abs(p.delta) < 1e-15);
}

TEST_CASE("coupling matrices are symmetric with gamma_ca on the rate diagonal") {
    std::mt19937_64 rng(11);
    const CouplingMatrices m = coupling_matrices(testing::random_configuration(rng, 4));
    CHECK((m.delta - m.delta.transpose()).norm() < 1e-14);
    CHECK((m.gammas - m.gammas.transpose()).norm() < 1e-14);
    for (Eigen::Index i = 0; i < 4; ++i) {
        CHECK(m.delta(i, i) == 0.0);
        CHECK(m.gammas(i, i) == 1.0);
    }
    CHECK_NOTHROW(check_invariants(m));
}

TEST_CASE("rate matrix is positive semidefinite for random geometries") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 6);
    double worst = 1.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const CouplingMatrices m = coupling_matrices(testing::random_configuration(rng, size(rng), 1.5, 0.05));
        worst = std::min(worst, min_rate_eigenvalue(m));
        REQUIRE_NOTHROW(check_invariants(m));
    }
    CHECK(worst >= -1e-10);
}

TEST_CASE("couplings are invariant under rigid rotations") {
    std::mt19937_64 rng(5);
    const AtomConfiguration c = testing::random_configuration(rng, 5);
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(0.83, testing::random_unit(rng)).toRotationMatrix();
    AtomConfiguration r = c;
    for (std::size_t i = 0; i < c.size(); ++i) {
        r.positions[i] = rot * c.positions[i] + Vec3(0.3, -1.2, 4.0);
        r.dipoles[i] = rot * c.dipoles[i];
    }
    const CouplingMatrices a = coupling_matrices(c);
    const CouplingMatrices b = coupling_matrices(r);
    CHECK((a.delta - b.delta).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((a.gammas - b.gammas).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("single atom and gamma_ca scaling") {
    AtomConfiguration one;
    one.positions = {Vec3::Zero()};
    one.dipoles = {Vec3::UnitZ()};
    const CouplingMatrices m = coupling_matrices(one);
    CHECK(m.size() == 1);
    CHECK(m.gammas(0, 0) == 1.0);
    CHECK(m.delta(0, 0) == 0.0);

    AtomConfiguration two = pair(0.7, Vec3::UnitZ(), Vec3::UnitZ());
    const CouplingMatrices unit = coupling_matrices(two);
    two.gamma_ca = 2.5;
    const CouplingMatrices scaled = coupling_matrices(two);
    CHECK((scaled.gammas - 2.5 * unit.gammas).norm() < 1e-14);
    CHECK((scaled.delta - 2.5 * unit.delta).norm() < 1e-14);
}

TEST_CASE("invalid configurations") {
    AtomConfiguration c = pair(0.7, Vec3::UnitZ(), Vec3::UnitZ());
    c.positions[1] = c.positions[0];
    CHECK_THROWS_AS(coupling_matrices(c), CoincidentAtoms);
    CHECK_THROWS_WITH(coupling_matrices(c), doctest::Contains("coincident atoms"));
    CHECK_THROWS_AS(green_tensor(1.0, Vec3::Zero()), CoincidentAtoms);

    c = pair(0.7, Vec3(0.0, 0.0, 1.1), Vec3::UnitZ());
    CHECK_THROWS_AS(coupling_matrices(c), InvalidArgument);
    c = pair(0.7, Vec3::UnitZ(), Vec3::UnitZ());
    c.pumped_index = 2;
    CHECK_THROWS_AS(coupling_matrices(c), InvalidArgument);
    c.pumped_index = 0;
    c.dipoles.pop_back();
    CHECK_THROWS_AS(coupling_matrices(c), InvalidArgument);
    CHECK_THROWS_AS(coupling_pair(pair(0.7, Vec3::UnitZ(), Vec3::UnitZ()), 1, 1), InvalidArgument);
}

TEST_CASE("invariant check rejects unphysical matrices") {
    CouplingMatrices m;
    m.delta = Eigen::MatrixXd::Zero(2, 2);
    m.gammas = Eigen::MatrixXd::Identity(2, 2);
    CHECK_NOTHROW(check_invariants(m));
    m.gammas(0, 1) = m.gammas(1, 0) = 1.2;
    CHECK_THROWS_AS(check_invariants(m), PhysicsError);
    m.gammas(0, 1) = 0.5;
    m.gammas(1, 0) = 0.4;
    CHECK_THROWS_AS(check_invariants(m), PhysicsError);
}
