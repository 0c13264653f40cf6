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

#include "cli.hpp"

#include "fewatom/fewatom.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#ifndef FEWATOM_VERSION_STRING
#define FEWATOM_VERSION_STRING "unknown"
#endif

namespace fewatom::cli {

namespace {

using nlohmann::ordered_json;

class FallbackFailed : public Error {
public:
    using Error::Error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

// Same rounding as the CSV so JSON output is reproducible byte for byte.
double rounded(double v) { return std::isfinite(v) ? std::stod(fmt(v)) : v; }

ordered_json number(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return rounded(v);
}

struct Range {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;
};

Range parse_range(const std::string& text, const std::string& flag) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) {
        parts.push_back(part);
    }
    Range r;
    try {
        if (parts.size() != 3) {
            throw std::invalid_argument(text);
        }
        std::size_t used = 0;
        r.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument(text);
        r.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(text);
        const long long points = std::stoll(parts[2], &used);
        if (used != parts[2].size() || points < 1) throw std::invalid_argument(text);
        r.points = static_cast<std::size_t>(points);
    } catch (const std::exception&) {
        throw InvalidArgument(flag + " expects min:max:points, got '" + text + "'");
    }
    if (r.points > 1 && !(r.max > r.min)) {
        throw InvalidArgument(flag + " needs max > min");
    }
    return r;
}

// Writes to --out when given, to the command's stdout otherwise.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw InvalidArgument("cannot write '" + path + "'");
            }
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* stream_;
};

void write_json(const std::string& path, const ordered_json& doc) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    file << doc.dump(2) << '\n';
}

void header(std::ostream& os, const std::string& command, const RunConfig& config) {
    os << "# fewatom " << FEWATOM_VERSION_STRING << ' ' << command << '\n';
    os << "# frequencies are offsets from omega_ca in units of gamma_ca; rates in units of gamma_ca\n";
    std::istringstream echo(format_config(config));
    std::string line;
    while (std::getline(echo, line)) {
        os << "# config: " << line << '\n';
    }
}

unsigned thread_count(int requested) {
    if (requested > 0) {
        return static_cast<unsigned>(requested);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> pump_grid(const RunConfig& config, const std::optional<Range>& range) {
    if (range) {
        return log_spaced(range->min, range->max, range->points);
    }
    if (config.W_sweep) {
        return log_spaced(config.W_sweep->min, config.W_sweep->max, config.W_sweep->points);
    }
    return default_pump_grid();
}

const char* failure_name(FailureKind kind) {
    switch (kind) {
        case FailureKind::none: return "";
        case FailureKind::invalid: return "invalid";
        case FailureKind::physics: return "physics";
        case FailureKind::defective: return "defective";
        case FailureKind::other: return "other";
    }
    return "other";
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (const char c : text) {
        quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return quoted + '"';
}

// ---------------------------------------------------------------- couplings

int cmd_couplings(const std::string& config_path, const std::string& out_path, std::ostream& out) {
    const RunConfig config = load_config(config_path);
    const CouplingMatrices m = coupling_matrices(config.atoms());
    check_invariants(m);
    Sink sink(out_path, out);
    std::ostream& os = sink.stream();
    header(os, "couplings", config);
    os << "i,j,delta,gamma\n";
    for (Eigen::Index i = 0; i < m.gammas.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.gammas.cols(); ++j) {
            os << i << ',' << j << ',' << fmt(m.delta(i, j)) << ',' << fmt(m.gammas(i, j)) << '\n';
        }
    }
    return kOk;
}

// ----------------------------------------------------------------- spectrum

struct SpectrumOptions {
    std::string config;
    std::string grid = "-10:10:2001";
    bool normalized = false;
    std::string out;
    std::string sidecar;
};

int cmd_spectrum(const SpectrumOptions& opt, std::ostream& out, std::ostream& err) {
    const RunConfig config = load_config(opt.config);
    if (!config.W) {
        throw ConfigError(0, "W", "the spectrum command needs a single pump intensity W");
    }
    const Range range = parse_range(opt.grid, "--grid");
    const std::vector<double> grid = linear_grid(range.min, range.max, range.points);

    const AtomConfiguration atoms = config.atoms();
    const CouplingMatrices couplings = coupling_matrices(atoms);
    check_invariants(couplings);
    const Superoperator liouvillian = build_liouvillian(couplings, atoms.pumped_index, *config.W);
    const DensityMatrix state = steady_state(liouvillian);

    ordered_json doc;
    doc["n_atoms"] = config.size();
    doc["W"] = number(*config.W);
    SpectrumGridResult spectrum;
    try {
        const LorentzianSum lines = spectrum_lorentzians(liouvillian, couplings, state);
        spectrum = evaluate_spectrum(lines, grid, opt.normalized);
        doc["method"] = "eigen";
        doc["total_rate"] = number(lines.total_rate);
        doc["reconstruction_residual"] = number(lines.reconstruction_residual);
        if (lines.total_rate > 0.0) {
            const Fwhm width = fwhm(lines);
            doc["fwhm"] = number(width.delta_omega);
            doc["omega_peak"] = number(width.omega_peak);
        }
        ordered_json terms = ordered_json::array();
        for (const auto& t : lines.terms) {
            terms.push_back({{"nu", number(t.nu)},
                             {"gamma_hwhm", number(t.gamma)},
                             {"w_re", number(t.weight.real())},
                             {"w_im", number(t.weight.imag())}});
        }
        doc["terms"] = std::move(terms);
    } catch (const DefectiveBlock& e) {
        err << "warning: " << e.what() << "; falling back to time integration\n";
        try {
            spectrum = spectrum_via_integration(liouvillian, couplings, state, 1e4, integration_step_for(grid), grid);
        } catch (const std::exception& inner) {
            throw FallbackFailed(inner.what());
        }
        if (opt.normalized) {
            const double peak = *std::max_element(spectrum.intensity.begin(), spectrum.intensity.end());
            if (!(peak > 0.0)) {
                throw DarkSpectrum();
            }
            for (double& v : spectrum.intensity) {
                v /= peak;
            }
            spectrum.normalized = true;
        }
        doc["method"] = "integration";
        doc["total_rate"] = number(emission_rate(state, couplings));
        doc["terms"] = ordered_json::array();
    }

    Sink sink(opt.out, out);
    std::ostream& os = sink.stream();
    header(os, "spectrum", config);
    os << "# grid = " << opt.grid << (opt.normalized ? ", normalized to peak 1" : "") << '\n';
    os << "omega_offset,intensity\n";
    for (std::size_t i = 0; i < spectrum.omega.size(); ++i) {
        os << fmt(spectrum.omega[i]) << ',' << fmt(spectrum.intensity[i]) << '\n';
    }
    std::string sidecar = opt.sidecar;
    if (sidecar.empty() && !opt.out.empty()) {
        sidecar = opt.out + ".json";
    }
    if (!sidecar.empty()) {
        write_json(sidecar, doc);
    }
    return kOk;
}

// -------------------------------------------------------------------- sweep

struct SweepSummary {
    ordered_json json;
    bool ok = false;
};

SweepSummary summarize(const AtomConfiguration& atoms, const std::vector<SweepOutcome>& outcomes) {
    SweepResult result;
    result.config = atoms;
    for (const auto& o : outcomes) {
        if (o.point) {
            result.points.push_back(*o.point);
        }
    }
    SweepSummary s;
    s.ok = !outcomes.empty() && 10 * result.points.size() >= 9 * outcomes.size();
    s.json["points"] = outcomes.size();
    s.json["succeeded"] = result.points.size();
    if (result.points.empty()) {
        s.json["status"] = "no successful points";
        s.json["delta_omega_min"] = nullptr;
        s.json["n_max"] = nullptr;
        s.json["efficiency"] = nullptr;
        return s;
    }
    const SaturationReport r = saturation_point(result);
    s.json["status"] = r.status();
    s.json["delta_omega_min"] = number(r.delta_omega_min);
    s.json["W_at_delta_omega_min"] = number(r.W_at_delta_omega_min);
    s.json["delta_omega_min_bracketed"] = r.width_bracketed;
    s.json["n_max"] = number(r.n_max);
    s.json["W_at_nmax"] = number(r.W_at_nmax);
    s.json["delta_omega_at_nmax"] = number(r.delta_omega_at_nmax);
    s.json["absorption_at_nmax"] = number(r.absorption_at_nmax);
    s.json["efficiency"] =
        r.absorption_at_nmax > 0.0 ? number(efficiency(r.n_max, r.absorption_at_nmax, atoms.gamma_ca)) : nullptr;
    return s;
}

struct SweepOptions {
    std::string config;
    std::vector<double> range;  // W_min W_max points
    std::string out;
    std::string summary;
    int threads = 0;
};

int cmd_sweep(const SweepOptions& opt, std::ostream& out) {
    const RunConfig config = load_config(opt.config);
    std::optional<Range> range;
    if (!opt.range.empty()) {
        if (opt.range.size() != 3 || opt.range[2] < 1 || opt.range[2] != std::floor(opt.range[2])) {
            throw InvalidArgument("sweep expects W_min W_max points");
        }
        range = Range{opt.range[0], opt.range[1], static_cast<std::size_t>(opt.range[2])};
        if (!(range->min > 0.0) || (range->points > 1 && !(range->max > range->min))) {
            throw InvalidArgument("sweep needs 0 < W_min < W_max");
        }
    }
    const std::vector<double> W = pump_grid(config, range);
    const AtomConfiguration atoms = config.atoms();
    check_invariants(coupling_matrices(atoms));
    const std::vector<SweepOutcome> outcomes = run_sweep(atoms, W, thread_count(opt.threads));
    SweepSummary summary = summarize(atoms, outcomes);
    ordered_json doc{{"n_atoms", config.size()}};
    doc.update(summary.json);
    summary.json = std::move(doc);

    Sink sink(opt.out, out);
    std::ostream& os = sink.stream();
    header(os, "sweep", config);
    os << "W,delta_omega,omega_peak,n,emission_rate,absorption_rate,error\n";
    for (const auto& o : outcomes) {
        os << fmt(o.W);
        if (o.point) {
            const NarrowingPoint& p = *o.point;
            os << ',' << fmt(p.delta_omega) << ',' << fmt(p.omega_peak) << ',' << fmt(p.n) << ','
               << fmt(p.emission_rate) << ',' << fmt(p.absorption_rate) << ",\n";
        } else {
            os << ",,,,," << csv_field(std::string(failure_name(o.failure)) + ": " + o.error) << '\n';
        }
    }
    os << "# summary: " << summary.json.dump() << '\n';
    std::string summary_path = opt.summary;
    if (summary_path.empty() && !opt.out.empty()) {
        summary_path = opt.out + ".summary.json";
    }
    if (!summary_path.empty()) {
        write_json(summary_path, summary.json);
    }
    return summary.ok ? kOk : kSweepIncomplete;
}

// --------------------------------------------------------------------- scan

struct ScanOptions {
    std::string config;
    std::string lengths;
    std::string pump;
    std::string out;
    int threads = 0;
};

int cmd_scan(const ScanOptions& opt, std::ostream& out) {
    const RunConfig config = load_config(opt.config);
    const Range L = parse_range(opt.lengths, "--L");
    if (!(L.min > 0.0)) {
        throw InvalidArgument("--L needs positive lengths");
    }
    std::optional<Range> pump;
    if (!opt.pump.empty()) {
        pump = parse_range(opt.pump, "--pump");
    }
    const std::vector<double> W = pump_grid(config, pump);
    const unsigned threads = thread_count(opt.threads);

    Sink sink(opt.out, out);
    std::ostream& os = sink.stream();
    header(os, "scan", config);
    os << "# positions are multiplied by L; length_scale is ignored\n";
    os << "L,delta_omega_min,n_max,efficiency,W_at_nmax,delta_omega_at_nmax,status,error\n";
    std::size_t succeeded = 0;
    const std::vector<double> lengths = linear_grid(L.min, L.max, L.points);
    for (const double length : lengths) {
        os << fmt(length);
        try {
            const AtomConfiguration atoms = config.atoms_at_scale(length);
            check_invariants(coupling_matrices(atoms));
            const SweepSummary s = summarize(atoms, run_sweep(atoms, W, threads));
            if (!s.ok) {
                throw Error("fewer than 90% of pump points succeeded");
            }
            auto field = [&](const char* key) {
                return s.json[key].is_null() ? std::string() : fmt(s.json[key].get<double>());
            };
            os << ',' << field("delta_omega_min") << ',' << field("n_max") << ',' << field("efficiency") << ','
               << field("W_at_nmax") << ',' << field("delta_omega_at_nmax") << ','
               << csv_field(s.json["status"].get<std::string>()) << ",\n";
            ++succeeded;
        } catch (const std::exception& e) {
            os << ",,,,,,failed," << csv_field(e.what()) << '\n';
        }
    }
    return 10 * succeeded >= 9 * lengths.size() ? kOk : kSweepIncomplete;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Few-atom line-narrowing simulator"};
    app.set_version_flag("--version", std::string(FEWATOM_VERSION_STRING));
    app.require_subcommand(1);

    std::string couplings_config;
    std::string couplings_out;
    auto* couplings = app.add_subcommand("couplings", "Print the dipole-dipole shift and rate matrices");
    couplings->add_option("config", couplings_config, "Configuration file")->required();
    couplings->add_option("--out", couplings_out, "Write the CSV to PATH");

    SpectrumOptions spectrum_opt;
    auto* spectrum = app.add_subcommand("spectrum", "Steady-state emission spectrum at the configured W");
    spectrum->add_option("config", spectrum_opt.config, "Configuration file")->required();
    spectrum->add_option("--grid", spectrum_opt.grid, "Frequency grid min:max:points")->capture_default_str();
    spectrum->add_flag("--normalized", spectrum_opt.normalized, "Scale the peak to 1");
    spectrum->add_option("--out", spectrum_opt.out, "Write the CSV to PATH (Lorentzian terms to PATH.json)");
    spectrum->add_option("--sidecar", spectrum_opt.sidecar, "Write the Lorentzian terms to PATH");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "Line width and photon number over a pump sweep");
    sweep->add_option("config", sweep_opt.config, "Configuration file")->required();
    sweep->add_option("range", sweep_opt.range, "W_min W_max points (log-spaced; default: config W_sweep)")
        ->expected(3);
    sweep->add_option("--out", sweep_opt.out, "Write the CSV to PATH (summary to PATH.summary.json)");
    sweep->add_option("--summary", sweep_opt.summary, "Write the summary JSON to PATH");
    sweep->add_option("--threads", sweep_opt.threads, "Worker threads (default: all cores)");

    ScanOptions scan_opt;
    auto* scan = app.add_subcommand("scan", "Saturation point as a function of the geometry scale L");
    scan->add_option("config", scan_opt.config, "Configuration file (geometry template)")->required();
    scan->add_option("--L", scan_opt.lengths, "Length scale range min:max:points (linear)")->required();
    scan->add_option("--pump", scan_opt.pump, "Pump range min:max:points (log-spaced)");
    scan->add_option("--out", scan_opt.out, "Write the CSV to PATH");
    scan->add_option("--threads", scan_opt.threads, "Worker threads (default: all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << FEWATOM_VERSION_STRING << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kSchema;
    }

    try {
        if (couplings->parsed()) {
            return cmd_couplings(couplings_config, couplings_out, out);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(spectrum_opt, out, err);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_opt, out);
        }
        return cmd_scan(scan_opt, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const PhysicsError& e) {
        err << "error: " << e.what() << '\n';
        return kPhysics;
    } catch (const DarkSpectrum& e) {
        err << "error: " << e.what() << '\n';
        return kPhysics;
    } catch (const FallbackFailed& e) {
        err << "error: time-integration fallback failed: " << e.what() << '\n';
        return kDefective;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace fewatom::cli
