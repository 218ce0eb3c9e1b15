#include "sndn/config.hpp"

#include <fstream>
#include <sstream>

namespace sndn {

bool IniFile::has(const std::string& section, const std::string& key) const {
    auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) != 0;
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    auto s = sections.find(section);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

long IniFile::get_long(const std::string& section, const std::string& key, long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    try {
        return std::stol(v);
    } catch (const std::exception&) {
        throw ParseError("config key " + section + "." + key + ": not an integer: '" + v + "'");
    }
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw ParseError("config key " + section + "." + key + ": not a number: '" + v + "'");
    }
}

IniFile parse_ini(const std::string& text, const std::string& origin) {
    IniFile ini;
    std::istringstream in(text);
    std::string line;
    std::string section = "sim";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            ini.sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(origin + ":" + std::to_string(lineno) + ": empty key");
        ini.sections[section][key] = value;
    }
    return ini;
}

IniFile load_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ini(buf.str(), path);
}

SimConfig sim_config_from_ini(const IniFile& ini) {
    SimConfig cfg;
    const std::string scheme = ini.get("sim", "scheme", "sndn");
    auto id = parse_scheme(scheme);
    if (!id) throw ParseError("unknown scheme '" + scheme + "'");
    cfg.scheme = *id;
    cfg.ttl = ini.get_long("sim", "ttl", cfg.ttl);
    cfg.params.alpha = ini.get_double("sim", "alpha", cfg.params.alpha);
    cfg.params.window = ini.get_long("sim", "tp", cfg.params.window);
    cfg.params.circle_threshold =
        ini.get_double("sim", "circle_threshold", cfg.params.circle_threshold);
    cfg.params.freshness_tick = ini.get_long("sim", "freshness_tick", cfg.params.freshness_tick);
    cfg.kappa = ini.get_double("sim", "kappa", cfg.kappa);
    cfg.request_interval = ini.get_long("sim", "request_interval", cfg.request_interval);
    cfg.direct_serve_prob = ini.get_double("sim", "direct_serve_prob", cfg.direct_serve_prob);
    cfg.warmup = ini.get_long("sim", "warmup", cfg.warmup);
    cfg.warmup_ttl = ini.get_long("sim", "warmup_ttl", cfg.warmup_ttl);
    cfg.link_budget = static_cast<int>(ini.get_long("sim", "link_budget", cfg.link_budget));
    cfg.seed = static_cast<std::uint64_t>(ini.get_long("sim", "seed", static_cast<long>(cfg.seed)));
    cfg.synopsis_bits =
        static_cast<std::size_t>(ini.get_long("sim", "synopsis_bits", static_cast<long>(cfg.synopsis_bits)));
    cfg.synopsis_hashes = static_cast<int>(ini.get_long("sim", "synopsis_hashes", cfg.synopsis_hashes));
    cfg.validate();
    return cfg;
}

SyntheticSpec synthetic_spec_from_ini(const IniFile& ini) {
    SyntheticSpec spec;
    spec.n_users = static_cast<int>(ini.get_long("synthetic", "n_users", spec.n_users));
    spec.n_communities =
        static_cast<int>(ini.get_long("synthetic", "n_communities", spec.n_communities));
    spec.intra_rate = ini.get_double("synthetic", "intra_rate", spec.intra_rate);
    spec.inter_rate = ini.get_double("synthetic", "inter_rate", spec.inter_rate);
    spec.mean_duration = ini.get_long("synthetic", "mean_duration", spec.mean_duration);
    spec.horizon = ini.get_long("synthetic", "horizon", spec.horizon);
    spec.n_base_stations =
        static_cast<int>(ini.get_long("synthetic", "n_base_stations", spec.n_base_stations));
    spec.seed = static_cast<std::uint64_t>(
        ini.get_long("synthetic", "seed", static_cast<long>(spec.seed)));
    spec.n_components = static_cast<int>(ini.get_long("synthetic", "n_components", spec.n_components));
    spec.n_items = static_cast<int>(ini.get_long("synthetic", "n_items", spec.n_items));
    return spec;
}

std::string canonical_config(const SimConfig& cfg) {
    std::ostringstream out;
    out << "alpha = " << format_compact(cfg.params.alpha) << "\n";
    out << "circle_threshold = " << format_compact(cfg.params.circle_threshold) << "\n";
    out << "direct_serve_prob = " << format_compact(cfg.direct_serve_prob) << "\n";
    out << "freshness_tick = " << cfg.params.freshness_tick << "\n";
    out << "kappa = " << format_compact(cfg.kappa) << "\n";
    out << "link_budget = " << cfg.link_budget << "\n";
    out << "request_interval = " << cfg.request_interval << "\n";
    out << "scheme = " << to_string(cfg.scheme) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "synopsis_bits = " << cfg.synopsis_bits << "\n";
    out << "synopsis_hashes = " << cfg.synopsis_hashes << "\n";
    out << "tp = " << cfg.params.window << "\n";
    out << "ttl = " << cfg.ttl << "\n";
    out << "warmup = " << cfg.warmup << "\n";
    out << "warmup_ttl = " << cfg.warmup_ttl << "\n";
    return out.str();
}

std::string config_hash(const SimConfig& cfg) { return to_hex16(fnv1a64(canonical_config(cfg))); }

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    for (auto& field : split(value, ',')) {
        std::string t = trim(field);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

ExperimentSpec experiment_from_ini(const IniFile& ini) {
    ExperimentSpec spec;
    spec.base = sim_config_from_ini(ini);
    auto list = [&](const char* key) { return split_list(ini.get("sweep", key, "")); };
    for (auto& v : list("ttl")) spec.ttls.push_back(std::stol(v));
    for (auto& v : list("alpha")) spec.alphas.push_back(std::stod(v));
    for (auto& v : list("tp")) spec.tps.push_back(std::stol(v));
    for (auto& v : list("kappa")) spec.kappas.push_back(std::stod(v));
    for (auto& v : list("scheme")) {
        auto id = parse_scheme(v);
        if (!id) throw ParseError("unknown scheme in sweep axis: '" + v + "'");
        spec.schemes.push_back(*id);
    }
    for (auto& v : list("seed")) spec.seeds.push_back(std::stoull(v));
    return spec;
}

std::vector<SimConfig> ExperimentSpec::expand() const {
    auto or_default = [](auto list, auto fallback) {
        if (list.empty()) list.push_back(fallback);
        return list;
    };
    auto s = or_default(schemes, base.scheme);
    auto t = or_default(ttls, base.ttl);
    auto a = or_default(alphas, base.params.alpha);
    auto w = or_default(tps, base.params.window);
    auto k = or_default(kappas, base.kappa);
    auto r = or_default(seeds, base.seed);
    std::vector<SimConfig> out;
    for (auto scheme : s)
        for (auto ttl : t)
            for (auto alpha : a)
                for (auto tp : w)
                    for (auto kappa : k)
                        for (auto seed : r) {
                            SimConfig cfg = base;
                            cfg.scheme = scheme;
                            cfg.ttl = ttl;
                            cfg.params.alpha = alpha;
                            cfg.params.window = tp;
                            cfg.kappa = kappa;
                            cfg.seed = seed;
                            cfg.validate();
                            out.push_back(cfg);
                        }
    return out;
}

}  // namespace sndn
