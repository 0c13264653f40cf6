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

// Product Hilbert space of N two-level atoms and the Lindblad superoperator
// acting on its density matrices.
//
// Basis convention: atom i is bit i of the basis index; a set bit means the
// atom is excited. Density matrices are vectorized column-stacked, so element
// (ket, bra) of a d x d matrix sits at ket + bra * d.

#include "fewatom/coupling.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <complex>
#include <cstddef>
#include <vector>

namespace fewatom {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::ColMajor, Eigen::Index>;

class ProductBasis {
public:
    explicit ProductBasis(std::size_t n_atoms);

    std::size_t n_atoms() const noexcept { return n_atoms_; }
    Eigen::Index dimension() const noexcept { return Eigen::Index{1} << n_atoms_; }
    int excitation_count(Eigen::Index state) const;

private:
    std::size_t n_atoms_;
};

/// S^{i-}: |..1_i..> -> |..0_i..>.
SparseMatrix lowering_operator(const ProductBasis& basis, std::size_t atom);
/// S^{i+} = (S^{i-})^dagger.
SparseMatrix raising_operator(const ProductBasis& basis, std::size_t atom);
SparseMatrix identity_operator(const ProductBasis& basis);

inline Eigen::Index vec_index(Eigen::Index ket, Eigen::Index bra, Eigen::Index dim) { return ket + bra * dim; }

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v);

/// Number of (ket, bra) pairs with excitation difference q among n atoms:
/// sum_e C(n, e) C(n, e - q).
Eigen::Index sector_dimension(std::size_t n_atoms, int q);

class Superoperator {
public:
    Superoperator(std::size_t n_atoms, SparseMatrix matrix);

    std::size_t n_atoms() const noexcept { return n_atoms_; }
    Eigen::Index dimension() const noexcept { return matrix_.rows(); }
    Eigen::Index hilbert_dimension() const noexcept { return Eigen::Index{1} << n_atoms_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }

    /// Coherence sector of a vectorized index: excitations(ket) - excitations(bra).
    int sector_of(Eigen::Index index) const { return sector_of_index_[static_cast<std::size_t>(index)]; }
    /// Vectorized indices of sector q, increasing.
    const std::vector<Eigen::Index>& sector_indices(int q) const;

    /// Number of stored nonzeros coupling two different sectors. Zero for any
    /// operator built by build_liouvillian().
    std::size_t cross_sector_entries() const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix_ * v; }

private:
    std::size_t n_atoms_;
    SparseMatrix matrix_;
    std::vector<int> sector_of_index_;
    std::vector<std::vector<Eigen::Index>> sectors_;  // sectors_[q + N]
};

/// Generator of d sigma / dt in the frame rotating at omega_ca:
///   -i [H, s] + sum_ij G_ij (S_i- s S_j+ - 1/2 {S_i+ S_j-, s})
///             + W g (S_p+ s S_p- - 1/2 {S_p- S_p+, s}),
/// with H = sum_{i != j} delta_ij S_i+ S_j- and g = gamma_ca.
Superoperator build_liouvillian(const CouplingMatrices& couplings, std::size_t pumped_index, double W);

struct SectorBlock {
    int sector = 0;
    Eigen::MatrixXcd matrix;
    std::vector<Eigen::Index> indices;  // block row/column r <-> vectorized index indices[r]
};

/// Dense restriction of the superoperator to sector q. Throws InvalidArgument
/// for |q| > N.
SectorBlock sector_block(const Superoperator& superop, int q);

/// Reassemble a sparse superoperator from sector blocks.
SparseMatrix embed_blocks(const std::vector<SectorBlock>& blocks, Eigen::Index dimension);

/// 2^N x 2^N density matrix.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Eigen::MatrixXcd matrix);

    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
    Eigen::Index dimension() const noexcept { return matrix_.rows(); }

    cplx trace() const { return matrix_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;

    /// Pure state |index><index|.
    static DensityMatrix basis_state(Eigen::Index dimension, Eigen::Index index);

private:
    Eigen::MatrixXcd matrix_;
};

}  // namespace fewatom
