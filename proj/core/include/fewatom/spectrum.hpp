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

// Angle-averaged far-field emission spectrum.
//
// The field correlation is weighted by the collective rates,
//   g(tau) = sum_ij Gamma_ij <S_i+(tau) S_j-(0)>_ss,
// evaluated with the quantum regression theorem inside the q = -1 sector, and
//   S(omega) = (1/pi) Re int_0^inf e^{-i omega tau} g(tau) d tau.
// With g(tau) = sum_k w_k exp(lambda_k tau), lambda_k = -gamma_k + i nu_k, each
// mode contributes w_k / (pi (gamma_k + i (omega - nu_k))). The integral of
// S(omega) equals Re g(0), the total emission rate.
//
// Weights are complex: non-orthogonal modes interfere, and individual Re(w_k)
// may be negative even though S(omega) is not.

#include "fewatom/coupling.hpp"
#include "fewatom/hilbert.hpp"

#include <span>
#include <vector>

namespace fewatom {

struct LorentzianTerm {
    double nu = 0.0;     // center, detuning from omega_ca
    double gamma = 0.0;  // half width at half maximum
    cplx weight{0.0, 0.0};
};

struct LorentzianSum {
    std::vector<LorentzianTerm> terms;
    double total_rate = 0.0;
    double reconstruction_residual = 0.0;

    double evaluate(double omega) const;
    /// Exact integral of S over [lo, hi].
    double integrate(double lo, double hi) const;
};

struct SpectrumGridResult {
    std::vector<double> omega;
    std::vector<double> intensity;
    bool normalized = false;
};

/// Lorentzian decomposition from the eigenmodes of the q = -1 block; one term
/// per eigenvalue, C(2N, N-1) in total. Throws DefectiveBlock when
/// ||V Lambda V^-1 - L||_F / ||L||_F exceeds 1e-8.
LorentzianSum spectrum_lorentzians(const Superoperator& superop, const CouplingMatrices& couplings,
                                   const DensityMatrix& state);

/// Brute-force route: propagate the regression vectors with exact matrix
/// exponential steps of size dt, integrate e^{-i omega tau} g(tau) with
/// Gauss-Legendre quadrature inside each step, up to t_max. Throws
/// NonConvergent if the regression state has not decayed below 1e-8 of its
/// initial norm by t_max.
SpectrumGridResult spectrum_via_integration(const Superoperator& superop, const CouplingMatrices& couplings,
                                            const DensityMatrix& state, double t_max, double dt,
                                            std::span<const double> grid);

/// Pointwise S(omega). Throws InvalidArgument for an empty or non-increasing
/// grid, DarkSpectrum when normalizing a spectrum whose maximum is not positive.
SpectrumGridResult evaluate_spectrum(const LorentzianSum& lorentzians, std::span<const double> grid,
                                     bool normalized = false);

/// Reporting pass: merges terms whose eigenvalues differ by less than `tolerance`.
LorentzianSum merge_degenerate(const LorentzianSum& lorentzians, double tolerance = 1e-9);

/// `points` equally spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

/// Time step suited to resolving the grid in spectrum_via_integration().
double integration_step_for(std::span<const double> grid);

}  // namespace fewatom
