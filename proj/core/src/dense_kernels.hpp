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

// Dense complex kernels backed by LAPACK. Internal to the core library.

#include <Eigen/Core>

namespace fewatom::detail {

struct EigenPairs {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;  // right eigenvectors, column k <-> values(k)
};

/// General complex eigendecomposition (zgeev).
EigenPairs eigen_decompose(Eigen::MatrixXcd matrix);

/// Singular values in decreasing order (zgesdd).
Eigen::VectorXd singular_values(Eigen::MatrixXcd matrix);

}  // namespace fewatom::detail
