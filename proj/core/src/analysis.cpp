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

#include "fewatom/analysis.hpp"

#include "fewatom/error.hpp"
#include "fewatom/hilbert.hpp"
#include "fewatom/steady.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace fewatom {

namespace {

constexpr double kCrossingTolerance = 1e-10;

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        });
    }
}

double golden_section_max(const LorentzianSum& s, double a, double b) {
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = s.evaluate(c);
    double fd = s.evaluate(d);
    while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = s.evaluate(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = s.evaluate(d);
        }
    }
    return 0.5 * (a + b);
}

// Walks from `start` in direction `sign` with step h until S drops below
// `level`, then bisects the last bracket.
double half_max_crossing(const LorentzianSum& s, double start, double level, double h, double sign) {
    double inside = start;
    double outside = start + sign * h;
    while (s.evaluate(outside) >= level) {
        inside = outside;
        outside += sign * h;
    }
    while (std::abs(outside - inside) > kCrossingTolerance) {
        const double mid = 0.5 * (inside + outside);
        if (s.evaluate(mid) >= level) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return 0.5 * (inside + outside);
}

// Parabola through three points; returns (x_vertex, y_vertex), vertex clamped
// to [x0, x2].
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (a == 0.0) {
        return {x1, y1};
    }
    const double b = d01 - a * (x0 + x1);
    const double xv = std::clamp(-b / (2.0 * a), x0, x2);
    const double yv = y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1);
    return {xv, yv};
}

double parabola_at(double x0, double y0, double x1, double y1, double x2, double y2, double x) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    return y0 + d01 * (x - x0) + a * (x - x0) * (x - x1);
}

FailureKind classify(const std::exception& e) {
    if (dynamic_cast<const DefectiveBlock*>(&e) != nullptr) {
        return FailureKind::defective;
    }
    if (dynamic_cast<const PhysicsError*>(&e) != nullptr || dynamic_cast<const DarkSpectrum*>(&e) != nullptr) {
        return FailureKind::physics;
    }
    if (dynamic_cast<const InvalidArgument*>(&e) != nullptr) {
        return FailureKind::invalid;
    }
    return FailureKind::other;
}

}  // namespace

Fwhm fwhm(const LorentzianSum& lorentzians) {
    double total_weight = 0.0;
    for (const auto& t : lorentzians.terms) {
        total_weight += std::abs(t.weight);
    }
    if (!(lorentzians.total_rate > 0.0) || !(total_weight > 0.0)) {
        throw DarkSpectrum();
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double narrowest = lo;
    std::vector<double> candidates;
    for (const auto& t : lorentzians.terms) {
        if (std::abs(t.weight) <= 1e-12 * total_weight) {
            continue;
        }
        lo = std::min(lo, t.nu - 20.0 * t.gamma);
        hi = std::max(hi, t.nu + 20.0 * t.gamma);
        narrowest = std::min(narrowest, t.gamma);
        candidates.push_back(t.nu);
    }
    const double span = hi - lo;
    const auto points = static_cast<std::size_t>(std::clamp(4.0 * span / narrowest, 2000.0, 20000.0));
    const double h = span / static_cast<double>(points);
    for (std::size_t i = 0; i <= points; ++i) {
        candidates.push_back(lo + h * static_cast<double>(i));
    }

    double best = candidates.front();
    double best_value = lorentzians.evaluate(best);
    for (const double x : candidates) {
        const double v = lorentzians.evaluate(x);
        if (v > best_value) {
            best = x;
            best_value = v;
        }
    }
    if (!(best_value > 0.0)) {
        throw DarkSpectrum();
    }

    Fwhm out;
    out.omega_peak = golden_section_max(lorentzians, best - h, best + h);
    out.peak_value = lorentzians.evaluate(out.omega_peak);
    if (out.peak_value < best_value) {
        out.omega_peak = best;
        out.peak_value = best_value;
    }
    const double half = 0.5 * out.peak_value;
    const double walk = std::min(h, 0.25 * narrowest);
    out.lower = half_max_crossing(lorentzians, out.omega_peak, half, walk, -1.0);
    out.upper = half_max_crossing(lorentzians, out.omega_peak, half, walk, +1.0);
    out.delta_omega = out.upper - out.lower;
    return out;
}

Fwhm fwhm_on_grid(const SpectrumGridResult& spectrum) {
    const auto& x = spectrum.omega;
    const auto& y = spectrum.intensity;
    if (x.size() < 3 || x.size() != y.size()) {
        throw InvalidArgument("spectrum grid too small");
    }
    const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    if (!(y[peak] > 0.0)) {
        throw DarkSpectrum();
    }
    const double half = 0.5 * y[peak];
    auto interpolate = [&](std::size_t in, std::size_t out) {
        return x[in] + (half - y[in]) * (x[out] - x[in]) / (y[out] - y[in]);
    };
    std::size_t left = peak;
    while (left > 0 && y[left - 1] >= half) {
        --left;
    }
    std::size_t right = peak;
    while (right + 1 < y.size() && y[right + 1] >= half) {
        ++right;
    }
    if (left == 0 || right + 1 == y.size()) {
        throw InvalidArgument("half-maximum crossing lies outside the grid");
    }
    Fwhm out;
    out.omega_peak = x[peak];
    out.peak_value = y[peak];
    out.lower = interpolate(left, left - 1);
    out.upper = interpolate(right, right + 1);
    out.delta_omega = out.upper - out.lower;
    return out;
}

double band_weight(const LorentzianSum& lorentzians, const Fwhm& width) {
    return lorentzians.integrate(width.lower, width.upper);
}

double photon_number(const LorentzianSum& lorentzians, const Fwhm& width) {
    if (!(width.delta_omega > 0.0)) {
        throw InvalidArgument("photon_number needs a positive width");
    }
    return band_weight(lorentzians, width) / width.delta_omega;
}

NarrowingPoint evaluate_point(const CouplingMatrices& couplings, std::size_t pumped_index, double W) {
    const Superoperator liouvillian = build_liouvillian(couplings, pumped_index, W);
    const DensityMatrix state = steady_state(liouvillian);
    const LorentzianSum lines = spectrum_lorentzians(liouvillian, couplings, state);
    const Fwhm width = fwhm(lines);

    NarrowingPoint p;
    p.W = W;
    p.delta_omega = width.delta_omega;
    p.omega_peak = width.omega_peak;
    p.n = photon_number(lines, width);
    p.emission_rate = lines.total_rate;
    p.absorption_rate = pump_absorption_rate(state, W, pumped_index, couplings.gamma_ca);
    return p;
}

std::vector<SweepOutcome> run_sweep(const AtomConfiguration& config, const std::vector<double>& W_list,
                                    unsigned threads) {
    const CouplingMatrices couplings = coupling_matrices(config);
    check_invariants(couplings);
    std::vector<SweepOutcome> out(W_list.size());
    parallel_for(W_list.size(), threads, [&](std::size_t i) {
        SweepOutcome& o = out[i];
        o.W = W_list[i];
        try {
            o.point = evaluate_point(couplings, config.pumped_index, W_list[i]);
        } catch (const std::exception& e) {
            o.failure = classify(e);
            o.error = e.what();
        }
    });
    return out;
}

SweepResult pump_sweep(const AtomConfiguration& config, const std::vector<double>& W_list, unsigned threads) {
    for (std::size_t i = 0; i < W_list.size(); ++i) {
        if (!(W_list[i] > 0.0) || (i > 0 && !(W_list[i] > W_list[i - 1]))) {
            throw InvalidArgument("pump intensities must be positive and strictly increasing");
        }
    }
    SweepResult result;
    result.config = config;
    for (auto& o : run_sweep(config, W_list, threads)) {
        if (!o.point) {
            throw SweepPointError(o.W, o.failure, o.error);
        }
        result.points.push_back(*o.point);
    }
    return result;
}

SaturationReport saturation_point(const SweepResult& sweep) {
    const auto& pts = sweep.points;
    if (pts.empty()) {
        throw InvalidArgument("empty sweep");
    }
    SaturationReport r;
    const auto n_it = std::max_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.n < b.n; });
    const auto w_it = std::min_element(pts.begin(), pts.end(),
                                       [](auto& a, auto& b) { return a.delta_omega < b.delta_omega; });
    const auto in = static_cast<std::size_t>(n_it - pts.begin());
    const auto iw = static_cast<std::size_t>(w_it - pts.begin());

    r.n_max = n_it->n;
    r.W_at_nmax = n_it->W;
    r.absorption_at_nmax = n_it->absorption_rate;
    r.delta_omega_at_nmax = n_it->delta_omega;
    r.delta_omega_min = w_it->delta_omega;
    r.W_at_delta_omega_min = w_it->W;
    r.bracketed = pts.size() >= 3 && in > 0 && in + 1 < pts.size();
    r.width_bracketed = pts.size() >= 3 && iw > 0 && iw + 1 < pts.size();

    auto lw = [&](std::size_t i) { return std::log(pts[i].W); };
    if (r.bracketed) {
        const auto [x, y] = parabola_vertex(lw(in - 1), pts[in - 1].n, lw(in), pts[in].n, lw(in + 1), pts[in + 1].n);
        r.n_max = std::max(y, n_it->n);
        r.W_at_nmax = std::exp(x);
        r.absorption_at_nmax = parabola_at(lw(in - 1), pts[in - 1].absorption_rate, lw(in), pts[in].absorption_rate,
                                           lw(in + 1), pts[in + 1].absorption_rate, x);
        r.delta_omega_at_nmax = parabola_at(lw(in - 1), pts[in - 1].delta_omega, lw(in), pts[in].delta_omega,
                                            lw(in + 1), pts[in + 1].delta_omega, x);
    }
    if (r.width_bracketed) {
        const auto [x, y] = parabola_vertex(lw(iw - 1), pts[iw - 1].delta_omega, lw(iw), pts[iw].delta_omega,
                                            lw(iw + 1), pts[iw + 1].delta_omega);
        r.delta_omega_min = std::min(y, w_it->delta_omega);
        r.W_at_delta_omega_min = std::exp(x);
    }
    return r;
}

double efficiency(double n_max, double absorption_rate, double gamma_ca) {
    if (!(absorption_rate > 0.0)) {
        throw InvalidArgument("efficiency undefined for zero absorption rate");
    }
    return n_max * gamma_ca / absorption_rate;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t points) {
    if (points == 0 || !(lo > 0.0)) {
        throw InvalidArgument("log grid needs positive bounds and at least one point");
    }
    if (points == 1) {
        return {lo};
    }
    if (!(hi > lo)) {
        throw InvalidArgument("grid maximum must exceed minimum");
    }
    std::vector<double> out(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = lo * std::exp(step * static_cast<double>(i));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> default_pump_grid() { return log_spaced(0.1, 30.0, 40); }

}  // namespace fewatom
