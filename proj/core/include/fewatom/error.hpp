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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fewatom {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad index, non-unit dipole, negative pump, dimension mismatch.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input that is well-formed but violates a physical invariant
/// (coincident atoms, non positive-semidefinite rate matrix).
class PhysicsError : public Error {
public:
    using Error::Error;
};

class CoincidentAtoms : public PhysicsError {
public:
    CoincidentAtoms() : PhysicsError("coincident atoms") {}
};

/// The stationary sector has more than one null vector.
class NonUniqueSteadyState : public PhysicsError {
public:
    explicit NonUniqueSteadyState(std::size_t dimension)
        : PhysicsError("non-unique steady state: null space dimension " + std::to_string(dimension)),
          dimension_(dimension) {}

    std::size_t dimension() const noexcept { return dimension_; }

private:
    std::size_t dimension_;
};

/// Eigendecomposition of a sector block failed its reconstruction check.
/// Callers should fall back to spectrum_via_integration().
class DefectiveBlock : public Error {
public:
    explicit DefectiveBlock(double residual)
        : Error("defective block: eigendecomposition residual " + std::to_string(residual) +
                " exceeds tolerance; use spectrum_via_integration"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Time integration stopped before the correlation function decayed.
class NonConvergent : public Error {
public:
    using Error::Error;
};

/// Spectrum with zero integrated rate; no width can be defined.
class DarkSpectrum : public Error {
public:
    DarkSpectrum() : Error("dark spectrum: total emission rate is zero") {}
};

}  // namespace fewatom
