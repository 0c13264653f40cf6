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

#include "fewatom/steady.hpp"

#include "dense_kernels.hpp"
#include "fewatom/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <bit>

namespace fewatom {

namespace {

std::size_t count_atoms(Eigen::Index dimension) {
    if (dimension <= 0 || !std::has_single_bit(static_cast<unsigned long long>(dimension))) {
        throw InvalidArgument("density matrix dimension is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(static_cast<unsigned long long>(dimension)));
}

std::size_t nullity(const Eigen::MatrixXcd& block, double tolerance) {
    const Eigen::VectorXd s = detail::singular_values(block);
    const double cutoff = tolerance * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
    return static_cast<std::size_t>((s.array() < cutoff).count());
}

}  // namespace

std::size_t stationary_nullity(const Superoperator& superop, double tolerance) {
    return nullity(sector_block(superop, 0).matrix, tolerance);
}

DensityMatrix steady_state(const Superoperator& superop) {
    const SectorBlock block = sector_block(superop, 0);
    if (const std::size_t dim = nullity(block.matrix, 1e-9); dim > 1) {
        throw NonUniqueSteadyState(dim);
    }
    const Eigen::Index dim = superop.hilbert_dimension();
    const auto size = static_cast<Eigen::Index>(block.indices.size());

    // The rows belonging to populations sum to zero (trace preservation), so
    // one of them is redundant. Index 0 is the population of |0...0>.
    Eigen::MatrixXcd system = block.matrix;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
    for (Eigen::Index c = 0; c < size; ++c) {
        const Eigen::Index idx = block.indices[static_cast<std::size_t>(c)];
        system(0, c) = (idx % dim == idx / dim) ? 1.0 : 0.0;
    }
    rhs(0) = 1.0;

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
    Eigen::VectorXcd x = lu.solve(rhs);
    x += lu.solve(rhs - system * x);  // one refinement step

    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim * dim);
    for (Eigen::Index r = 0; r < size; ++r) {
        full(block.indices[static_cast<std::size_t>(r)]) = x(r);
    }
    Eigen::MatrixXcd rho = unvectorize(full);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

double steady_residual(const Superoperator& superop, const DensityMatrix& state) {
    if (state.dimension() != superop.hilbert_dimension()) {
        throw InvalidArgument("state dimension does not match superoperator");
    }
    return superop.apply(vectorize(state.matrix())).norm();
}

cplx expectation(const DensityMatrix& state, const SparseMatrix& op) {
    if (op.rows() != state.dimension() || op.cols() != state.dimension()) {
        throw InvalidArgument("operator dimension does not match state");
    }
    // Tr(A s) = sum_{r,c} A(r,c) s(c,r)
    cplx acc = 0.0;
    for (Eigen::Index c = 0; c < op.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(op, c); it; ++it) {
            acc += it.value() * state.matrix()(c, it.row());
        }
    }
    return acc;
}

cplx expectation(const DensityMatrix& state, const Eigen::MatrixXcd& op) {
    if (op.rows() != state.dimension() || op.cols() != state.dimension()) {
        throw InvalidArgument("operator dimension does not match state");
    }
    return (op * state.matrix()).trace();
}

double pump_absorption_rate(const DensityMatrix& state, double W, std::size_t pumped_index, double gamma_ca) {
    const ProductBasis basis(count_atoms(state.dimension()));
    const SparseMatrix ground = lowering_operator(basis, pumped_index) * raising_operator(basis, pumped_index);
    return W * gamma_ca * expectation(state, ground).real();
}

double emission_rate(const DensityMatrix& state, const CouplingMatrices& couplings) {
    const std::size_t n = count_atoms(state.dimension());
    if (n != couplings.size()) {
        throw InvalidArgument("coupling size does not match state");
    }
    const ProductBasis basis(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const SparseMatrix up = raising_operator(basis, i);
        for (std::size_t j = 0; j < n; ++j) {
            const double g = couplings.gammas(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (g != 0.0) {
                total += g * expectation(state, SparseMatrix(up * lowering_operator(basis, j))).real();
            }
        }
    }
    return total;
}

double excited_population(const DensityMatrix& state, std::size_t atom) {
    const ProductBasis basis(count_atoms(state.dimension()));
    const SparseMatrix excited = raising_operator(basis, atom) * lowering_operator(basis, atom);
    return expectation(state, excited).real();
}

}  // namespace fewatom
