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

#include "fewatom/coupling.hpp"
#include "fewatom/hilbert.hpp"

#include <cstddef>

namespace fewatom {

/// Stationary state of the superoperator, solved inside the q = 0 sector by a
/// dense LU with one equation replaced by the trace constraint.
///
/// Throws NonUniqueSteadyState when the q = 0 block has more than one singular
/// value below 1e-9 (relative to max(1, largest singular value)).
DensityMatrix steady_state(const Superoperator& superop);

/// Number of singular values of the q = 0 block below `tolerance` * max(1, s_max).
std::size_t stationary_nullity(const Superoperator& superop, double tolerance = 1e-9);

/// || L vec(sigma) ||_2.
double steady_residual(const Superoperator& superop, const DensityMatrix& state);

/// Tr(A sigma). Throws InvalidArgument on a dimension mismatch.
cplx expectation(const DensityMatrix& state, const SparseMatrix& op);
cplx expectation(const DensityMatrix& state, const Eigen::MatrixXcd& op);

/// W gamma_ca <S_p- S_p+>: rate at which pump photons are absorbed.
double pump_absorption_rate(const DensityMatrix& state, double W, std::size_t pumped_index, double gamma_ca = 1.0);

/// sum_ij Gamma_ij <S_i+ S_j->: total photon emission rate into 4 pi.
double emission_rate(const DensityMatrix& state, const CouplingMatrices& couplings);

/// Excited-state population <S_i+ S_i-> of one atom.
double excited_population(const DensityMatrix& state, std::size_t atom);

}  // namespace fewatom
