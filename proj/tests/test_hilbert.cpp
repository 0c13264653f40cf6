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

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace fewatom;

namespace {

Superoperator random_liouvillian(std::mt19937_64& rng, std::size_t n, double W) {
    const AtomConfiguration c = testing::random_configuration(rng, n);
    return build_liouvillian(coupling_matrices(c), c.pumped_index, W);
}

Eigen::RowVectorXcd trace_functional(Eigen::Index dim) {
    Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(dim * dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        t(vec_index(k, k, dim)) = 1.0;
    }
    return t;
}

}  // namespace

TEST_CASE("ladder operators") {
    const ProductBasis basis(3);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(8, 8);
    for (std::size_t i = 0; i < 3; ++i) {
        const Eigen::MatrixXcd down(lowering_operator(basis, i));
        const Eigen::MatrixXcd up(raising_operator(basis, i));
        CHECK((down * down).norm() == 0.0);
        CHECK((up - down.adjoint()).norm() == 0.0);
        CHECK((up * down + down * up - id).norm() == 0.0);
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j) {
                const Eigen::MatrixXcd other(lowering_operator(basis, j));
                CHECK((down * other - other * down).norm() == 0.0);
            }
        }
    }
    // atom 1 excited is basis index 2
    const Eigen::MatrixXcd down1(lowering_operator(basis, 1));
    CHECK(down1(0, 2) == cplx(1.0));
    CHECK(basis.excitation_count(7) == 3);
    CHECK_THROWS_AS(ProductBasis(9), InvalidArgument);
    CHECK_THROWS_AS(lowering_operator(basis, 3), InvalidArgument);
}

TEST_CASE("vectorization is column stacking") {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const Eigen::VectorXcd v = vectorize(m);
    CHECK(v(vec_index(0, 1, 2)) == cplx(2.0));
    CHECK(v(vec_index(1, 0, 2)) == cplx(3.0));
    CHECK((unvectorize(v) - m).norm() == 0.0);
}

TEST_CASE("sector dimensions") {
    const Eigen::Index expected[] = {1, 4, 15, 56, 210};
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(sector_dimension(n, -1) == expected[n - 1]);
        Eigen::Index total = 0;
        for (int q = -static_cast<int>(n); q <= static_cast<int>(n); ++q) {
            total += sector_dimension(n, q);
        }
        CHECK(total == (Eigen::Index{1} << (2 * n)));
    }
    CHECK(sector_dimension(5, 0) == 252);
    CHECK(sector_dimension(3, 4) == 0);
}

TEST_CASE("single atom relaxation spectrum") {
    AtomConfiguration one;
    one.positions = {Vec3::Zero()};
    one.dipoles = {Vec3::UnitZ()};
    const CouplingMatrices m = coupling_matrices(one);

    for (const double W : {0.0, 2.0}) {
        const Superoperator L = build_liouvillian(m, 0, W);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(L.matrix()));
        std::vector<double> re;
        for (Eigen::Index k = 0; k < 4; ++k) {
            CHECK(std::abs(solver.eigenvalues()(k).imag()) < 1e-12);
            re.push_back(solver.eigenvalues()(k).real());
        }
        std::sort(re.begin(), re.end());
        CHECK(re[0] == doctest::Approx(-(1.0 + W)).epsilon(1e-12));
        CHECK(re[1] == doctest::Approx(-(1.0 + W) / 2).epsilon(1e-12));
        CHECK(re[2] == doctest::Approx(-(1.0 + W) / 2).epsilon(1e-12));
        CHECK(std::abs(re[3]) < 1e-12);
    }
}

TEST_CASE("liouvillian is block diagonal in coherence sectors") {
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 4; ++n) {
        const Superoperator L = random_liouvillian(rng, n, 1.3);
        CHECK(L.cross_sector_entries() == 0);
        std::vector<SectorBlock> blocks;
        Eigen::Index covered = 0;
        for (int q = -static_cast<int>(n); q <= static_cast<int>(n); ++q) {
            blocks.push_back(sector_block(L, q));
            CHECK(blocks.back().matrix.rows() == sector_dimension(n, q));
            covered += blocks.back().matrix.rows();
        }
        CHECK(covered == L.dimension());
        const SparseMatrix rebuilt = embed_blocks(blocks, L.dimension());
        CHECK(SparseMatrix(rebuilt - L.matrix()).norm() < 1e-14);
    }
    std::mt19937_64 rng2(1);
    CHECK_THROWS_AS(sector_block(random_liouvillian(rng2, 2, 1.0), 3), InvalidArgument);
}

TEST_CASE("liouvillian preserves trace and hermiticity") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        const Superoperator L = random_liouvillian(rng, n, 0.1 * trial);
        const Eigen::Index dim = L.hilbert_dimension();
        CHECK(std::abs((trace_functional(dim) * L.matrix()).norm()) < 1e-12);

        const Eigen::MatrixXcd rho = testing::random_density(rng, dim);
        const Eigen::MatrixXcd drho = unvectorize(L.apply(vectorize(rho)));
        CHECK(std::abs(drho.trace()) < 1e-12);
        CHECK((drho - drho.adjoint()).norm() < 1e-12);
    }
}

TEST_CASE("liouvillian spectrum is dissipative") {
    std::mt19937_64 rng(29);
    for (std::size_t n = 1; n <= 3; ++n) {
        const Superoperator L = random_liouvillian(rng, n, 2.0);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(L.matrix()), false);
        CHECK(solver.eigenvalues().real().maxCoeff() < 1e-10);
    }
}

TEST_CASE("density matrix helpers") {
    const DensityMatrix ground = DensityMatrix::basis_state(4, 0);
    CHECK(ground.trace() == cplx(1.0));
    CHECK(ground.hermiticity_error() == 0.0);
    CHECK(ground.min_eigenvalue() == doctest::Approx(0.0));
    CHECK_THROWS_AS(DensityMatrix(Eigen::MatrixXcd::Zero(2, 3)), InvalidArgument);
}
