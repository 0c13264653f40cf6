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

// Key-value configuration files:
//
//   # comment
//   [atoms]
//   n_atoms = 2
//   position_0 = 0 0 0        # units of c/omega_ca (times length_scale)
//   dipole_0 = 0 0 1
//   position_1 = 0.7 0 0
//   dipole_1 = 0 0 1
//   [pump]
//   pumped = 0
//   W = 1.77                  # or: W_sweep = min max points
//
// Optional keys: gamma_ca (default 1), length_scale (default 1). Atom indices
// are zero-based. Section headers are accepted and carry no meaning.

#include "fewatom/coupling.hpp"
#include "fewatom/error.hpp"

#include <cstddef>
#include <istream>
#include <optional>
#include <string>

namespace fewatom {

class ConfigError : public InvalidArgument {
public:
    ConfigError(std::size_t line, std::string field, const std::string& message)
        : InvalidArgument("line " + std::to_string(line) + ", field '" + field + "': " + message),
          line_(line),
          field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

struct PumpSweepSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;

    bool operator==(const PumpSweepSpec&) const = default;
};

struct RunConfig {
    std::vector<Vec3> positions;  // before length_scale
    std::vector<Vec3> dipoles;
    std::size_t pumped = 0;
    double gamma_ca = 1.0;
    double length_scale = 1.0;
    std::optional<double> W;
    std::optional<PumpSweepSpec> W_sweep;

    std::size_t size() const noexcept { return positions.size(); }

    /// Positions multiplied by length_scale; pump_W = W or 0.
    AtomConfiguration atoms() const;
    /// Same geometry rescaled to an explicit length.
    AtomConfiguration atoms_at_scale(double scale) const;

    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError with the offending line and field. Dipoles must be unit
/// vectors within 1e-6 and are renormalized exactly.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form (shortest round-trip numbers), one "key = value" per line; parse_config()
/// of the result reproduces the configuration exactly.
std::string format_config(const RunConfig& config);

}  // namespace fewatom
