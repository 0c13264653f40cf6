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

#include "dense_kernels.hpp"

#include "fewatom/error.hpp"

#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace fewatom::detail {

EigenPairs eigen_decompose(Eigen::MatrixXcd matrix) {
    const auto n = static_cast<lapack_int>(matrix.rows());
    EigenPairs out{Eigen::VectorXcd(n), Eigen::MatrixXcd(n, n)};
    if (n == 0) {
        return out;
    }
    std::complex<double> unused_left;
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, matrix.data(), n, out.values.data(),
                                          &unused_left, 1, out.vectors.data(), n);
    if (info != 0) {
        throw Error("zgeev failed with info = " + std::to_string(info));
    }
    return out;
}

Eigen::VectorXd singular_values(Eigen::MatrixXcd matrix) {
    const auto m = static_cast<lapack_int>(matrix.rows());
    const auto n = static_cast<lapack_int>(matrix.cols());
    Eigen::VectorXd s(std::min(m, n));
    if (s.size() == 0) {
        return s;
    }
    std::complex<double> unused;
    const lapack_int info =
        LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, matrix.data(), m, s.data(), &unused, 1, &unused, 1);
    if (info != 0) {
        throw Error("zgesdd failed with info = " + std::to_string(info));
    }
    return s;
}

}  // namespace fewatom::detail
