#include "sndn/traces.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sndn {

std::vector<ContactEvent> normalize_events(std::vector<ContactEvent> events) {
    if (events.empty()) throw ParseError("no events");
    for (auto& e : events) {
        if (e.a == e.b) throw ParseError("self-contact for node " + std::to_string(e.a));
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.start >= e.end)
            throw ParseError("contact with start >= end for pair (" + std::to_string(e.a) + "," +
                             std::to_string(e.b) + ")");
    }
    std::sort(events.begin(), events.end(), [](const ContactEvent& x, const ContactEvent& y) {
        return std::tie(x.a, x.b, x.start, x.end) < std::tie(y.a, y.b, y.start, y.end);
    });
    std::vector<ContactEvent> merged;
    for (const auto& e : events) {
        if (!merged.empty() && merged.back().a == e.a && merged.back().b == e.b &&
            e.start <= merged.back().end) {
            merged.back().end = std::max(merged.back().end, e.end);
        } else {
            merged.push_back(e);
        }
    }
    std::sort(merged.begin(), merged.end(), [](const ContactEvent& x, const ContactEvent& y) {
        return std::tie(x.start, x.a, x.b, x.end) < std::tie(y.start, y.a, y.b, y.end);
    });
    return merged;
}

namespace {

long parse_long(const std::string& field, const std::string& context) {
    std::size_t pos = 0;
    const std::string t = trim(field);
    if (t.empty()) throw ParseError(context + ": empty field");
    long v = 0;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw ParseError(context + ": not an integer: '" + t + "'");
    }
    if (pos != t.size()) throw ParseError(context + ": not an integer: '" + t + "'");
    return v;
}

double parse_double(const std::string& field, const std::string& context) {
    std::size_t pos = 0;
    const std::string t = trim(field);
    if (t.empty()) throw ParseError(context + ": empty field");
    double v = 0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw ParseError(context + ": not a number: '" + t + "'");
    }
    if (pos != t.size()) throw ParseError(context + ": not a number: '" + t + "'");
    return v;
}

bool is_header(const std::vector<std::string>& fields) {
    for (const auto& f : fields) {
        const std::string t = trim(f);
        if (t.empty()) return false;
        if (t.find_first_not_of("-0123456789.") != std::string::npos) return true;
    }
    return false;
}

}  // namespace

std::vector<ContactEvent> load_contact_events(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open contact trace: " + path);
    std::vector<ContactEvent> events;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        if (lineno == 1 && is_header(fields)) continue;
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (fields.size() != 4) throw ParseError(ctx + ": expected 4 fields a,b,start,end");
        ContactEvent e;
        e.a = static_cast<NodeId>(parse_long(fields[0], ctx));
        e.b = static_cast<NodeId>(parse_long(fields[1], ctx));
        e.start = parse_long(fields[2], ctx);
        e.end = parse_long(fields[3], ctx);
        if (e.a == e.b) throw ParseError(ctx + ": self-contact");
        if (e.start >= e.end) throw ParseError(ctx + ": start >= end");
        if (e.start < 0) throw ParseError(ctx + ": negative start time");
        events.push_back(e);
    }
    if (events.empty()) throw ParseError(path + ": no events");
    return normalize_events(std::move(events));
}

std::set<NodeId> load_stations(const std::string& path, const std::set<NodeId>& nodes) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open station list: " + path);
    std::set<NodeId> stations;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const std::string ctx = path + ":" + std::to_string(lineno);
        auto id = static_cast<NodeId>(parse_long(line, ctx));
        if (!nodes.count(id))
            throw ParseError(ctx + ": unknown node " + std::to_string(id) + " in base-station list");
        stations.insert(id);
    }
    return stations;
}

TraceBundle load_trace_dir(const std::string& dir) {
    TraceBundle bundle;
    bundle.events = load_contact_events(dir + "/contacts.csv");
    for (const auto& e : bundle.events) {
        bundle.nodes.insert(e.a);
        bundle.nodes.insert(e.b);
        bundle.horizon = std::max(bundle.horizon, e.end);
    }
    bundle.base_stations = load_stations(dir + "/stations.txt", bundle.nodes);
    return bundle;
}

ProfileMap parse_profiles(const std::string& text, const std::string& origin,
                          const Catalog& catalog, const std::set<NodeId>& users) {
    std::map<NodeId, std::map<ComponentId, double>> raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        if (lineno == 1 && is_header(fields)) continue;
        const std::string ctx = origin + ":" + std::to_string(lineno);
        if (fields.size() != 3) throw ParseError(ctx + ": expected 3 fields user,component,weight");
        auto user = static_cast<NodeId>(parse_long(fields[0], ctx));
        auto comp = catalog.components().lookup(trim(fields[1]));
        if (!comp) throw ParseError(ctx + ": unknown component '" + trim(fields[1]) + "'");
        double w = parse_double(fields[2], ctx);
        if (w < 0) throw ParseError(ctx + ": negative weight");
        raw[user][*comp] += w;
    }

    ProfileMap out;
    for (auto& [user, weights] : raw) {
        double total = 0;
        for (auto& [c, w] : weights) total += w;
        if (total <= 0) throw ParseError(origin + ": zero total weight for user " + std::to_string(user));
        PreferenceProfile p;
        p.user = user;
        for (auto& [c, w] : weights) p.weights[c] = w / total;
        out[user] = std::move(p);
    }
    // users without rows get the uniform profile over the namespace
    std::size_t n = catalog.components().size();
    for (NodeId user : users) {
        if (out.count(user)) continue;
        PreferenceProfile p;
        p.user = user;
        for (ComponentId c = 0; c < n; ++c) p.weights[c] = 1.0 / static_cast<double>(n);
        out[user] = std::move(p);
    }
    return out;
}

ProfileMap load_profiles(const std::string& path, const Catalog& catalog,
                         const std::set<NodeId>& users) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profiles file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profiles(buf.str(), path, catalog, users);
}

void save_contacts(const std::vector<ContactEvent>& events, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write contacts file: " + path);
    out << "a,b,start,end\n";
    for (const auto& e : events)
        out << e.a << "," << e.b << "," << e.start << "," << e.end << "\n";
}

void save_profiles(const ProfileMap& profiles, const Catalog& catalog, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write profiles file: " + path);
    out << "user,component,weight\n";
    for (const auto& [user, profile] : profiles) {
        for (const auto& [c, w] : profile.weights) {
            out << user << "," << catalog.components().token(c) << "," << format_compact(w) << "\n";
        }
    }
}

void save_stations(const std::set<NodeId>& stations, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write stations file: " + path);
    for (NodeId s : stations) out << s << "\n";
}

int community_of(int node, int n_users, int n_communities, int n_base_stations) {
    (void)n_base_stations;
    if (node < n_users) {
        int per = (n_users + n_communities - 1) / n_communities;
        return std::min(node / per, n_communities - 1);
    }
    return (node - n_users) % n_communities;  // stations round-robin
}

namespace {

std::string component_token(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "c%02d", i);
    return buf;
}

}  // namespace

SyntheticTrace generate_synthetic_trace(const SyntheticSpec& spec) {
    if (spec.n_users < 2) throw ParseError("synthetic trace needs at least 2 users");
    if (spec.intra_rate <= 0 || spec.inter_rate <= 0) throw ParseError("contact rates must be > 0");
    if (spec.n_communities < 1) throw ParseError("need at least 1 community");
    if (spec.n_components < 4) throw ParseError("need at least 4 components");

    SyntheticTrace out;

    // namespace + catalog: distinct 2-component names
    for (int i = 0; i < spec.n_components; ++i)
        out.catalog.components().intern(component_token(i));
    long max_items = static_cast<long>(spec.n_components) * (spec.n_components - 1) / 2;
    int n_items = static_cast<int>(std::min<long>(spec.n_items, max_items));
    Rng catalog_rng(mix_seed(spec.seed, 0xca7a106));
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(used.size()) < n_items) {
        int x = static_cast<int>(catalog_rng.next_below(spec.n_components));
        int y = static_cast<int>(catalog_rng.next_below(spec.n_components));
        if (x == y) continue;
        if (x > y) std::swap(x, y);
        if (!used.insert({x, y}).second) continue;
        out.catalog.add(make_data_name({static_cast<ComponentId>(x), static_cast<ComponentId>(y)}));
    }

    // contact events: per-pair Poisson start process, exponential durations
    int total_nodes = spec.n_users + spec.n_base_stations;
    std::vector<ContactEvent> events;
    for (int a = 0; a < total_nodes; ++a) {
        for (int b = a + 1; b < total_nodes; ++b) {
            bool a_station = a >= spec.n_users;
            bool b_station = b >= spec.n_users;
            if (a_station && b_station) continue;  // stations never meet
            int ca = community_of(a, spec.n_users, spec.n_communities, spec.n_base_stations);
            int cb = community_of(b, spec.n_users, spec.n_communities, spec.n_base_stations);
            double rate_per_s = (ca == cb ? spec.intra_rate : spec.inter_rate) / 3600.0;
            Rng rng(mix_seed(spec.seed, (static_cast<std::uint64_t>(a) << 20) | static_cast<std::uint64_t>(b), 0xc07ac7));
            double t = 0;
            while (true) {
                t += rng.next_exponential(rate_per_s);
                double dur = rng.next_exponential(1.0 / static_cast<double>(spec.mean_duration));
                Time start = static_cast<Time>(std::llround(t));
                Time end = start + std::max<Time>(1, static_cast<Time>(std::llround(dur)));
                if (start >= spec.horizon) break;
                end = std::min(end, spec.horizon);
                if (start < end) events.push_back(ContactEvent{a, b, start, end});
            }
        }
    }
    if (events.empty()) {
        std::fprintf(stderr, "warning: horizon too short, no synthetic contacts generated\n");
        out.bundle.horizon = spec.horizon;
    } else {
        out.bundle.events = normalize_events(std::move(events));
        out.bundle.horizon = spec.horizon;
    }
    for (int n = 0; n < total_nodes; ++n) out.bundle.nodes.insert(n);
    for (int s = spec.n_users; s < total_nodes; ++s) out.bundle.base_stations.insert(s);

    // community-biased profiles: 70% of mass on the community's block
    int block = (spec.n_components + spec.n_communities - 1) / spec.n_communities;
    for (int u = 0; u < spec.n_users; ++u) {
        int cu = community_of(u, spec.n_users, spec.n_communities, spec.n_base_stations);
        Rng rng(mix_seed(spec.seed, 0x9f0f11e, static_cast<std::uint64_t>(u)));
        double own_total = 0, other_total = 0;
        std::vector<double> raw(spec.n_components);
        for (int c = 0; c < spec.n_components; ++c) {
            raw[c] = 0.5 + rng.next_double();
            bool own = (c / block) == cu || spec.n_communities == 1;
            (own ? own_total : other_total) += raw[c];
        }
        PreferenceProfile p;
        p.user = u;
        double sum = 0;
        for (int c = 0; c < spec.n_components; ++c) {
            bool own = (c / block) == cu || spec.n_communities == 1;
            double mass = spec.n_communities == 1 ? 1.0 : (own ? 0.7 : 0.3);
            double denom = own ? own_total : other_total;
            if (denom > 0) {
                p.weights[static_cast<ComponentId>(c)] = mass * raw[c] / denom;
                sum += p.weights[static_cast<ComponentId>(c)];
            }
        }
        for (auto& [c, w] : p.weights) w /= sum;
        out.profiles[u] = std::move(p);
    }
    return out;
}

}  // namespace sndn
