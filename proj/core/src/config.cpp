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

#include "fewatom/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fewatom {

namespace {

constexpr std::size_t kMaxAtoms = 8;
constexpr double kDipoleTolerance = 1e-6;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct Entry {
    std::size_t line;
    std::string value;
};

std::vector<double> numbers(const Entry& e, const std::string& key, std::size_t count) {
    std::istringstream in(e.value);
    std::vector<double> out;
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size() || !std::isfinite(v)) {
                throw std::invalid_argument(token);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(e.line, key, "'" + token + "' is not a finite number");
        }
    }
    if (out.size() != count) {
        throw ConfigError(e.line, key, "expected " + std::to_string(count) + " value(s), got " +
                                           std::to_string(out.size()));
    }
    return out;
}

std::size_t count_value(const Entry& e, const std::string& key, double v) {
    if (v < 0.0 || v != std::floor(v)) {
        throw ConfigError(e.line, key, "expected a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
    char buf[40];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

std::string format_vec(const Vec3& v) {
    return format_double(v.x()) + " " + format_double(v.y()) + " " + format_double(v.z());
}

}  // namespace

AtomConfiguration RunConfig::atoms_at_scale(double scale) const {
    AtomConfiguration c;
    c.positions.reserve(positions.size());
    for (const auto& p : positions) {
        c.positions.push_back(p * scale);
    }
    c.dipoles = dipoles;
    c.pumped_index = pumped;
    c.pump_W = W.value_or(0.0);
    c.gamma_ca = gamma_ca;
    return c;
}

AtomConfiguration RunConfig::atoms() const { return atoms_at_scale(length_scale); }

RunConfig parse_config(std::istream& in) {
    std::map<std::string, Entry> entries;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(line_no, line, "malformed section header");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line_no, line, "expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(line_no, key, "missing key");
        }
        if (!entries.emplace(key, Entry{line_no, value}).second) {
            throw ConfigError(line_no, key, "duplicate key (first on line " + std::to_string(entries[key].line) + ")");
        }
    }

    RunConfig cfg;
    std::set<std::string> used;
    auto take = [&](const std::string& key) -> const Entry* {
        const auto it = entries.find(key);
        if (it == entries.end()) {
            return nullptr;
        }
        used.insert(key);
        return &it->second;
    };

    const Entry* n_entry = take("n_atoms");
    if (n_entry == nullptr) {
        throw ConfigError(0, "n_atoms", "missing required key");
    }
    const std::size_t n = count_value(*n_entry, "n_atoms", numbers(*n_entry, "n_atoms", 1)[0]);
    if (n == 0 || n > kMaxAtoms) {
        throw ConfigError(n_entry->line, "n_atoms", "must be between 1 and " + std::to_string(kMaxAtoms));
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::string pkey = "position_" + std::to_string(i);
        const std::string dkey = "dipole_" + std::to_string(i);
        const Entry* p = take(pkey);
        const Entry* d = take(dkey);
        if (p == nullptr) {
            throw ConfigError(0, pkey, "missing required key");
        }
        if (d == nullptr) {
            throw ConfigError(0, dkey, "missing required key");
        }
        const auto pv = numbers(*p, pkey, 3);
        const auto dv = numbers(*d, dkey, 3);
        Vec3 dipole(dv[0], dv[1], dv[2]);
        if (std::abs(dipole.norm() - 1.0) > kDipoleTolerance) {
            throw ConfigError(d->line, dkey, "dipole must be a unit vector");
        }
        cfg.positions.emplace_back(pv[0], pv[1], pv[2]);
        const double norm = dipole.norm();
        cfg.dipoles.push_back(std::abs(norm - 1.0) < 1e-14 ? dipole : Vec3(dipole / norm));
    }

    if (const Entry* e = take("pumped")) {
        cfg.pumped = count_value(*e, "pumped", numbers(*e, "pumped", 1)[0]);
        if (cfg.pumped >= n) {
            throw ConfigError(e->line, "pumped", "index out of range for n_atoms = " + std::to_string(n));
        }
    }
    if (const Entry* e = take("gamma_ca")) {
        cfg.gamma_ca = numbers(*e, "gamma_ca", 1)[0];
        if (!(cfg.gamma_ca > 0.0)) {
            throw ConfigError(e->line, "gamma_ca", "must be positive");
        }
    }
    if (const Entry* e = take("length_scale")) {
        cfg.length_scale = numbers(*e, "length_scale", 1)[0];
        if (!(cfg.length_scale > 0.0)) {
            throw ConfigError(e->line, "length_scale", "must be positive");
        }
    }
    if (const Entry* e = take("W")) {
        cfg.W = numbers(*e, "W", 1)[0];
        if (*cfg.W < 0.0) {
            throw ConfigError(e->line, "W", "must be >= 0");
        }
    }
    if (const Entry* e = take("W_sweep")) {
        const auto v = numbers(*e, "W_sweep", 3);
        PumpSweepSpec s{v[0], v[1], count_value(*e, "W_sweep", v[2])};
        if (!(s.min > 0.0) || s.points == 0 || (s.points > 1 && !(s.max > s.min))) {
            throw ConfigError(e->line, "W_sweep", "expected 0 < min < max and points >= 1");
        }
        cfg.W_sweep = s;
    }

    for (const auto& [key, entry] : entries) {
        if (!used.contains(key)) {
            throw ConfigError(entry.line, key, "unknown key");
        }
    }
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(0, path, "cannot open configuration file");
    }
    return parse_config(in);
}

std::string format_config(const RunConfig& config) {
    std::ostringstream out;
    out << "n_atoms = " << config.size() << '\n';
    for (std::size_t i = 0; i < config.size(); ++i) {
        out << "position_" << i << " = " << format_vec(config.positions[i]) << '\n';
        out << "dipole_" << i << " = " << format_vec(config.dipoles[i]) << '\n';
    }
    out << "pumped = " << config.pumped << '\n';
    out << "gamma_ca = " << format_double(config.gamma_ca) << '\n';
    out << "length_scale = " << format_double(config.length_scale) << '\n';
    if (config.W) {
        out << "W = " << format_double(*config.W) << '\n';
    }
    if (config.W_sweep) {
        out << "W_sweep = " << format_double(config.W_sweep->min) << ' ' << format_double(config.W_sweep->max) << ' '
            << config.W_sweep->points << '\n';
    }
    return out.str();
}

}  // namespace fewatom
