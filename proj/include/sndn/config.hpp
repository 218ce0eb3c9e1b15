#pragma once

#include <map>
#include <string>
#include <vector>

#include "sndn/engine.hpp"
#include "sndn/traces.hpp"

namespace sndn {

/// Flat `key = value` configuration text with `[section]` headers and '#'
/// comments. Keys are unique per section.
struct IniFile {
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
};

IniFile parse_ini(const std::string& text, const std::string& origin);
IniFile load_ini(const std::string& path);

/// [sim] section -> SimConfig (validated).
SimConfig sim_config_from_ini(const IniFile& ini);

/// [synthetic] section -> SyntheticSpec.
SyntheticSpec synthetic_spec_from_ini(const IniFile& ini);

/// Canonical `key = value` serialization; identical configs serialize
/// identically, and the config hash is the FNV-1a of this text.
std::string canonical_config(const SimConfig& config);
std::string config_hash(const SimConfig& config);

/// A base run plus sweep axes over ttl / alpha / tp / kappa / scheme / seed.
struct ExperimentSpec {
    SimConfig base;
    std::vector<Time> ttls;
    std::vector<double> alphas;
    std::vector<Time> tps;
    std::vector<double> kappas;
    std::vector<SchemeId> schemes;
    std::vector<std::uint64_t> seeds;

    /// Cross product in (scheme, ttl, alpha, tp, kappa, seed) order.
    std::vector<SimConfig> expand() const;
};

/// [sim] base plus [sweep] axes.
ExperimentSpec experiment_from_ini(const IniFile& ini);

}  // namespace sndn
