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

#include "fewatom/spectrum.hpp"

#include "dense_kernels.hpp"
#include "fewatom/error.hpp"
#include "fewatom/steady.hpp"

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fewatom {

namespace {

constexpr double kReconstructionTolerance = 1e-8;

// Regression vectors restricted to the q = -1 sector:
//   g(tau) = sum_i probe_i^T exp(L tau) source_i,
// probe_i = vec((S_i+)^T), source_i = vec(sum_j Gamma_ij S_j- sigma).
struct RegressionProblem {
    SectorBlock block;
    Eigen::MatrixXcd probes;   // N x D, row i = probe_i^T
    Eigen::MatrixXcd sources;  // D x N
};

RegressionProblem regression_problem(const Superoperator& superop, const CouplingMatrices& couplings,
                                     const DensityMatrix& state) {
    const std::size_t n = superop.n_atoms();
    if (couplings.size() != n) {
        throw InvalidArgument("coupling size does not match superoperator");
    }
    if (state.dimension() != superop.hilbert_dimension()) {
        throw InvalidArgument("state dimension does not match superoperator");
    }
    RegressionProblem p{sector_block(superop, -1), {}, {}};
    const ProductBasis basis(n);
    const Eigen::Index dim = basis.dimension();
    const auto size = static_cast<Eigen::Index>(p.block.indices.size());
    const auto atoms = static_cast<Eigen::Index>(n);

    Eigen::MatrixXcd combined = Eigen::MatrixXcd::Zero(dim, dim);
    p.probes = Eigen::MatrixXcd::Zero(atoms, size);
    p.sources = Eigen::MatrixXcd::Zero(size, atoms);
    for (Eigen::Index i = 0; i < atoms; ++i) {
        combined.setZero();
        for (Eigen::Index j = 0; j < atoms; ++j) {
            const double g = couplings.gammas(i, j);
            if (g != 0.0) {
                combined += g * (lowering_operator(basis, static_cast<std::size_t>(j)) * state.matrix());
            }
        }
        const Eigen::Index bit = Eigen::Index{1} << i;
        for (Eigen::Index r = 0; r < size; ++r) {
            const Eigen::Index idx = p.block.indices[static_cast<std::size_t>(r)];
            const Eigen::Index ket = idx % dim;
            const Eigen::Index bra = idx / dim;
            p.sources(r, i) = combined(ket, bra);
            // Tr(S_i+ Y) = sum_{ket,bra} (S_i+)(bra, ket) Y(ket, bra)
            if (!(ket & bit) && bra == (ket | bit)) {
                p.probes(i, r) = 1.0;
            }
        }
    }
    return p;
}

// Gauss-Legendre nodes and weights on [0, 1].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Quadrature gauss_legendre(int order) {
    Quadrature q;
    for (int k = 1; k <= order; ++k) {
        double x = std::cos(std::numbers::pi * (k - 0.25) / (order + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int m = 2; m <= order; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            derivative = order * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        q.nodes.push_back(0.5 * (1.0 - x));
        q.weights.push_back(1.0 / ((1.0 - x * x) * derivative * derivative));
    }
    return q;
}

void check_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw InvalidArgument("empty frequency grid");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw InvalidArgument("frequency grid must be strictly increasing");
        }
    }
}

}  // namespace

double LorentzianSum::evaluate(double omega) const {
    double s = 0.0;
    for (const auto& t : terms) {
        s += (t.weight / cplx(t.gamma, omega - t.nu)).real();
    }
    return s / std::numbers::pi;
}

double LorentzianSum::integrate(double lo, double hi) const {
    // int dx / (g + i x) = atan(x / g) - (i/2) ln(g^2 + x^2)
    double s = 0.0;
    for (const auto& t : terms) {
        const double a = lo - t.nu;
        const double b = hi - t.nu;
        const double angle = std::atan2(b, t.gamma) - std::atan2(a, t.gamma);
        const double log_ratio = std::log((t.gamma * t.gamma + b * b) / (t.gamma * t.gamma + a * a));
        s += t.weight.real() * angle + 0.5 * t.weight.imag() * log_ratio;
    }
    return s / std::numbers::pi;
}

LorentzianSum spectrum_lorentzians(const Superoperator& superop, const CouplingMatrices& couplings,
                                   const DensityMatrix& state) {
    const RegressionProblem p = regression_problem(superop, couplings, state);
    const Eigen::MatrixXcd& block = p.block.matrix;

    const detail::EigenPairs modes = detail::eigen_decompose(block);
    const Eigen::MatrixXcd& vectors = modes.vectors;
    const Eigen::VectorXcd& values = modes.values;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(vectors);
    const Eigen::MatrixXcd inverse = lu.inverse();

    const double scale = std::max(block.norm(), std::numeric_limits<double>::min());
    const double residual = (vectors * values.asDiagonal() * inverse - block).norm() / scale;
    if (!(residual <= kReconstructionTolerance)) {
        throw DefectiveBlock(residual);
    }

    const Eigen::MatrixXcd left = p.probes * vectors;     // N x D
    const Eigen::MatrixXcd right = inverse * p.sources;   // D x N

    LorentzianSum out;
    out.reconstruction_residual = residual;
    out.terms.reserve(static_cast<std::size_t>(values.size()));
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        LorentzianTerm term;
        term.nu = values(k).imag();
        term.gamma = -values(k).real();
        term.weight = left.col(k).cwiseProduct(right.row(k).transpose()).sum();
        out.terms.push_back(term);
    }
    out.total_rate = emission_rate(state, couplings);
    return out;
}

SpectrumGridResult spectrum_via_integration(const Superoperator& superop, const CouplingMatrices& couplings,
                                            const DensityMatrix& state, double t_max, double dt,
                                            std::span<const double> grid) {
    check_grid(grid);
    if (!(dt > 0.0) || !(t_max > 0.0)) {
        throw InvalidArgument("t_max and dt must be positive");
    }
    const RegressionProblem p = regression_problem(superop, couplings, state);
    SpectrumGridResult out;
    out.omega.assign(grid.begin(), grid.end());
    out.intensity.assign(grid.size(), 0.0);

    const double initial_norm = p.sources.norm();
    if (initial_norm == 0.0) {
        return out;  // nothing radiates
    }

    const Quadrature quad = gauss_legendre(10);
    std::vector<Eigen::MatrixXcd> node_propagators;
    for (const double x : quad.nodes) {
        node_propagators.emplace_back((p.block.matrix * (x * dt)).exp());
    }
    const Eigen::MatrixXcd step = (p.block.matrix * dt).exp();

    std::vector<cplx> transform(grid.size(), cplx(0.0));
    Eigen::MatrixXcd current = p.sources;
    double t = 0.0;
    while (t < t_max) {
        for (std::size_t m = 0; m < quad.nodes.size(); ++m) {
            const cplx g = (p.probes * (node_propagators[m] * current)).trace();
            const double tau = t + quad.nodes[m] * dt;
            const cplx weighted = quad.weights[m] * dt * g;
            for (std::size_t w = 0; w < grid.size(); ++w) {
                transform[w] += std::polar(1.0, -grid[w] * tau) * weighted;
            }
        }
        current = (step * current).eval();
        t += dt;
        if (current.norm() <= 1e-14 * initial_norm) {
            break;
        }
    }
    if (current.norm() > 1e-8 * initial_norm) {
        throw NonConvergent("correlation has not decayed below 1e-8 at t_max = " + std::to_string(t_max));
    }
    for (std::size_t w = 0; w < grid.size(); ++w) {
        out.intensity[w] = transform[w].real() / std::numbers::pi;
    }
    return out;
}

SpectrumGridResult evaluate_spectrum(const LorentzianSum& lorentzians, std::span<const double> grid,
                                     bool normalized) {
    check_grid(grid);
    SpectrumGridResult out;
    out.omega.assign(grid.begin(), grid.end());
    out.intensity.reserve(grid.size());
    for (const double w : grid) {
        out.intensity.push_back(lorentzians.evaluate(w));
    }
    if (normalized) {
        const double peak = *std::max_element(out.intensity.begin(), out.intensity.end());
        if (!(peak > 0.0)) {
            throw DarkSpectrum();
        }
        for (double& v : out.intensity) {
            v /= peak;
        }
        out.normalized = true;
    }
    return out;
}

LorentzianSum merge_degenerate(const LorentzianSum& lorentzians, double tolerance) {
    LorentzianSum out;
    out.total_rate = lorentzians.total_rate;
    out.reconstruction_residual = lorentzians.reconstruction_residual;
    std::vector<int> members;
    for (const auto& t : lorentzians.terms) {
        bool merged = false;
        for (std::size_t k = 0; k < out.terms.size(); ++k) {
            auto& m = out.terms[k];
            if (std::abs(cplx(-m.gamma, m.nu) - cplx(-t.gamma, t.nu)) < tolerance) {
                const double count = members[k];
                m.nu = (m.nu * count + t.nu) / (count + 1.0);
                m.gamma = (m.gamma * count + t.gamma) / (count + 1.0);
                m.weight += t.weight;
                ++members[k];
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.terms.push_back(t);
            members.push_back(1);
        }
    }
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points == 0) {
        throw InvalidArgument("grid needs at least one point");
    }
    if (points == 1) {
        return {lo};
    }
    if (!(hi > lo)) {
        throw InvalidArgument("grid maximum must exceed minimum");
    }
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = lo + step * static_cast<double>(i);
    }
    g.back() = hi;
    return g;
}

double integration_step_for(std::span<const double> grid) {
    double widest = 0.0;
    for (const double w : grid) {
        widest = std::max(widest, std::abs(w));
    }
    return widest > 0.0 ? std::min(0.25, 2.0 / widest) : 0.25;
}

}  // namespace fewatom
