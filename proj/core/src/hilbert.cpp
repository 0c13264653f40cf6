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

#include "fewatom/hilbert.hpp"

#include "fewatom/error.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

namespace fewatom {

namespace {

constexpr std::size_t kMaxAtoms = 8;

using Triplet = Eigen::Triplet<cplx, Eigen::Index>;
using Triplets = std::vector<Triplet>;

// Appends coeff * vec(A sigma B) = coeff * (B^T (x) A) vec(sigma).
void add_sandwich(Triplets& out, cplx coeff, const SparseMatrix& a, const SparseMatrix& b) {
    const Eigen::Index d = a.rows();
    for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator ita(a, c); ita; ++ita) {
            for (Eigen::Index bcol = 0; bcol < b.outerSize(); ++bcol) {
                for (SparseMatrix::InnerIterator itb(b, bcol); itb; ++itb) {
                    out.emplace_back(vec_index(ita.row(), bcol, d), vec_index(c, itb.row(), d),
                                     coeff * ita.value() * itb.value());
                }
            }
        }
    }
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace

ProductBasis::ProductBasis(std::size_t n_atoms) : n_atoms_(n_atoms) {
    if (n_atoms == 0 || n_atoms > kMaxAtoms) {
        throw InvalidArgument("number of atoms must be in [1, " + std::to_string(kMaxAtoms) + "]");
    }
}

int ProductBasis::excitation_count(Eigen::Index state) const {
    if (state < 0 || state >= dimension()) {
        throw InvalidArgument("basis index out of range");
    }
    return std::popcount(static_cast<unsigned long long>(state));
}

SparseMatrix lowering_operator(const ProductBasis& basis, std::size_t atom) {
    if (atom >= basis.n_atoms()) {
        throw InvalidArgument("atom index " + std::to_string(atom) + " out of range");
    }
    const Eigen::Index dim = basis.dimension();
    const Eigen::Index bit = Eigen::Index{1} << atom;
    Triplets t;
    t.reserve(static_cast<std::size_t>(dim / 2));
    for (Eigen::Index s = 0; s < dim; ++s) {
        if (s & bit) {
            t.emplace_back(s & ~bit, s, 1.0);
        }
    }
    SparseMatrix m(dim, dim);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseMatrix raising_operator(const ProductBasis& basis, std::size_t atom) {
    return SparseMatrix(lowering_operator(basis, atom).adjoint());
}

SparseMatrix identity_operator(const ProductBasis& basis) {
    SparseMatrix m(basis.dimension(), basis.dimension());
    m.setIdentity();
    return m;
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) {
        throw InvalidArgument("vector length is not a perfect square");
    }
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

Eigen::Index sector_dimension(std::size_t n_atoms, int q) {
    const int n = static_cast<int>(n_atoms);
    long long total = 0;
    for (int e = 0; e <= n; ++e) {
        total += binomial(n, e) * binomial(n, e - q);
    }
    return static_cast<Eigen::Index>(total);
}

Superoperator::Superoperator(std::size_t n_atoms, SparseMatrix matrix)
    : n_atoms_(n_atoms), matrix_(std::move(matrix)) {
    const Eigen::Index d = hilbert_dimension();
    if (matrix_.rows() != d * d || matrix_.cols() != d * d) {
        throw InvalidArgument("superoperator dimension does not match 4^N");
    }
    matrix_.makeCompressed();
    const int n = static_cast<int>(n_atoms_);
    sector_of_index_.resize(static_cast<std::size_t>(d * d));
    sectors_.resize(static_cast<std::size_t>(2 * n + 1));
    for (Eigen::Index idx = 0; idx < d * d; ++idx) {
        const auto ket = static_cast<unsigned long long>(idx % d);
        const auto bra = static_cast<unsigned long long>(idx / d);
        const int q = std::popcount(ket) - std::popcount(bra);
        sector_of_index_[static_cast<std::size_t>(idx)] = q;
        sectors_[static_cast<std::size_t>(q + n)].push_back(idx);
    }
}

const std::vector<Eigen::Index>& Superoperator::sector_indices(int q) const {
    const int n = static_cast<int>(n_atoms_);
    if (q < -n || q > n) {
        throw InvalidArgument("sector " + std::to_string(q) + " out of range");
    }
    return sectors_[static_cast<std::size_t>(q + n)];
}

std::size_t Superoperator::cross_sector_entries() const {
    std::size_t count = 0;
    for (Eigen::Index c = 0; c < matrix_.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(matrix_, c); it; ++it) {
            if (sector_of(it.row()) != sector_of(c)) {
                ++count;
            }
        }
    }
    return count;
}

Superoperator build_liouvillian(const CouplingMatrices& couplings, std::size_t pumped_index, double W) {
    const std::size_t n = couplings.size();
    if (couplings.delta.rows() != couplings.gammas.rows() || couplings.delta.cols() != couplings.gammas.cols() ||
        couplings.gammas.rows() != couplings.gammas.cols()) {
        throw InvalidArgument("coupling matrices have mismatched dimensions");
    }
    if (pumped_index >= n) {
        throw InvalidArgument("pumped index out of range");
    }
    if (!(W >= 0.0)) {
        throw InvalidArgument("pump intensity W must be >= 0");
    }
    const ProductBasis basis(n);
    const Eigen::Index dim = basis.dimension();
    std::vector<SparseMatrix> lower(n);
    std::vector<SparseMatrix> raise(n);
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = lowering_operator(basis, i);
        raise[i] = raising_operator(basis, i);
    }
    const SparseMatrix id = identity_operator(basis);

    SparseMatrix hamiltonian(dim, dim);
    SparseMatrix decay_generator(dim, dim);  // sum_ij G_ij S_i+ S_j-
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            const SparseMatrix hop = raise[i] * lower[j];
            if (i != j && couplings.delta(ii, jj) != 0.0) {
                hamiltonian += cplx(couplings.delta(ii, jj)) * hop;
            }
            if (couplings.gammas(ii, jj) != 0.0) {
                decay_generator += cplx(couplings.gammas(ii, jj)) * hop;
            }
        }
    }

    using namespace std::complex_literals;
    Triplets t;
    add_sandwich(t, -1i, hamiltonian, id);
    add_sandwich(t, 1i, id, hamiltonian);
    add_sandwich(t, -0.5, decay_generator, id);
    add_sandwich(t, -0.5, id, decay_generator);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double g = couplings.gammas(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (g != 0.0) {
                add_sandwich(t, g, lower[i], raise[j]);
            }
        }
    }
    if (W > 0.0) {
        const double rate = W * couplings.gamma_ca;
        const SparseMatrix ground_projector = lower[pumped_index] * raise[pumped_index];
        add_sandwich(t, rate, raise[pumped_index], lower[pumped_index]);
        add_sandwich(t, -0.5 * rate, ground_projector, id);
        add_sandwich(t, -0.5 * rate, id, ground_projector);
    }

    SparseMatrix l(dim * dim, dim * dim);
    l.setFromTriplets(t.begin(), t.end());
    l.prune(cplx(0.0));
    return Superoperator(n, std::move(l));
}

SectorBlock sector_block(const Superoperator& superop, int q) {
    SectorBlock block;
    block.sector = q;
    block.indices = superop.sector_indices(q);
    const auto size = static_cast<Eigen::Index>(block.indices.size());
    std::unordered_map<Eigen::Index, Eigen::Index> local;
    local.reserve(block.indices.size());
    for (Eigen::Index r = 0; r < size; ++r) {
        local.emplace(block.indices[static_cast<std::size_t>(r)], r);
    }
    block.matrix = Eigen::MatrixXcd::Zero(size, size);
    const SparseMatrix& m = superop.matrix();
    for (Eigen::Index c = 0; c < size; ++c) {
        for (SparseMatrix::InnerIterator it(m, block.indices[static_cast<std::size_t>(c)]); it; ++it) {
            const auto found = local.find(it.row());
            if (found != local.end()) {
                block.matrix(found->second, c) = it.value();
            }
        }
    }
    return block;
}

SparseMatrix embed_blocks(const std::vector<SectorBlock>& blocks, Eigen::Index dimension) {
    Triplets t;
    for (const auto& b : blocks) {
        for (Eigen::Index c = 0; c < b.matrix.cols(); ++c) {
            for (Eigen::Index r = 0; r < b.matrix.rows(); ++r) {
                if (b.matrix(r, c) != cplx(0.0)) {
                    t.emplace_back(b.indices[static_cast<std::size_t>(r)], b.indices[static_cast<std::size_t>(c)],
                                   b.matrix(r, c));
                }
            }
        }
    }
    SparseMatrix m(dimension, dimension);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw InvalidArgument("density matrix must be square");
    }
}

double DensityMatrix::hermiticity_error() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd h = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::basis_state(Eigen::Index dimension, Eigen::Index index) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension, dimension);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
}

}  // namespace fewatom
