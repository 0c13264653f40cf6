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

// Line-narrowing observables extracted from spectra over pump sweeps.
//
// Width: FWHM of the contiguous half-maximum interval containing the global
// peak (not the envelope of all peaks).
// Photon number: emission rate inside that interval per unit width,
//   n = (int_{FWHM} S(omega) d omega) / delta_omega,
// i.e. photons emitted per coherence time. For a single atom this gives
// n(W) = W / (2 (1 + W)^2), maximal (1/8) at W = 1.

#include "fewatom/coupling.hpp"
#include "fewatom/spectrum.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fewatom {

struct Fwhm {
    double delta_omega = 0.0;
    double omega_peak = 0.0;
    double peak_value = 0.0;
    double lower = 0.0;  // half-maximum crossings, lower < omega_peak < upper
    double upper = 0.0;
};

/// Global maximum by coarse scan plus golden-section refinement, crossings
/// by bisection to 1e-10. Throws DarkSpectrum if nothing radiates.
Fwhm fwhm(const LorentzianSum& lorentzians);

/// Same definition on sampled data, crossings linearly interpolated.
Fwhm fwhm_on_grid(const SpectrumGridResult& spectrum);

/// Emission rate inside the FWHM interval, exact per Lorentzian term.
double band_weight(const LorentzianSum& lorentzians, const Fwhm& width);

/// band_weight / delta_omega.
double photon_number(const LorentzianSum& lorentzians, const Fwhm& width);

struct NarrowingPoint {
    double W = 0.0;
    double delta_omega = 0.0;
    double omega_peak = 0.0;
    double n = 0.0;
    double emission_rate = 0.0;
    double absorption_rate = 0.0;
};

/// One pipeline pass: Liouvillian, steady state, spectrum, width, n.
NarrowingPoint evaluate_point(const CouplingMatrices& couplings, std::size_t pumped_index, double W);

enum class FailureKind { none, invalid, physics, defective, other };

struct SweepOutcome {
    double W = 0.0;
    std::optional<NarrowingPoint> point;
    FailureKind failure = FailureKind::none;
    std::string error;
};

/// Evaluates every W independently on up to `threads` workers. Failures are
/// recorded per point. Output order follows `W_list`.
std::vector<SweepOutcome> run_sweep(const AtomConfiguration& config, const std::vector<double>& W_list,
                                    unsigned threads = 1);

struct SweepResult {
    AtomConfiguration config;
    std::vector<NarrowingPoint> points;  // increasing W
};

/// Thrown by pump_sweep() when a point fails.
class SweepPointError : public std::runtime_error {
public:
    SweepPointError(double W, FailureKind kind, const std::string& what)
        : std::runtime_error("W = " + std::to_string(W) + ": " + what), W_(W), kind_(kind) {}
    double W() const noexcept { return W_; }
    FailureKind kind() const noexcept { return kind_; }

private:
    double W_;
    FailureKind kind_;
};

/// Requires a strictly increasing, positive W_list.
SweepResult pump_sweep(const AtomConfiguration& config, const std::vector<double>& W_list, unsigned threads = 1);

struct SaturationReport {
    bool bracketed = false;        // n_max lies strictly inside the sweep
    bool width_bracketed = false;  // likewise for delta_omega_min
    double n_max = 0.0;
    double W_at_nmax = 0.0;
    double absorption_at_nmax = 0.0;
    double delta_omega_at_nmax = 0.0;  // linewidth on the saturation branch
    double delta_omega_min = 0.0;
    double W_at_delta_omega_min = 0.0;

    std::string status() const { return bracketed ? "bracketed" : "saturation not bracketed"; }
};

/// Independent extrema of n and delta_omega, refined by a parabola in log W
/// through the discrete extremum and its neighbours.
SaturationReport saturation_point(const SweepResult& sweep);

/// n_max gamma_ca / absorption rate. Throws InvalidArgument for a
/// non-positive absorption rate.
double efficiency(double n_max, double absorption_rate, double gamma_ca = 1.0);

std::vector<double> log_spaced(double lo, double hi, std::size_t points);

/// 40 log-spaced pump intensities over [0.1, 30].
std::vector<double> default_pump_grid();

}  // namespace fewatom
