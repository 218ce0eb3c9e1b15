#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sndn/core.hpp"
#include "sndn/naming.hpp"

namespace sndn {

/// One normalized contact: a < b after normalization, start < end.
struct ContactEvent {
    NodeId a = kNoNode;
    NodeId b = kNoNode;
    Time start = 0;
    Time end = 0;

    bool operator==(const ContactEvent& o) const {
        return a == o.a && b == o.b && start == o.start && end == o.end;
    }
};

/// A loaded contact trace: nodes, flagged base stations, time-sorted
/// contact events and the horizon.
struct TraceBundle {
    std::set<NodeId> nodes;
    std::set<NodeId> base_stations;
    std::vector<ContactEvent> events;  // sorted by (start, a, b)
    Time horizon = 0;

    bool is_station(NodeId n) const { return base_stations.count(n) != 0; }
};

/// Normalized per-user preference over name components; weights sum to 1.
struct PreferenceProfile {
    NodeId user = kNoNode;
    std::map<ComponentId, double> weights;
};

using ProfileMap = std::map<NodeId, PreferenceProfile>;

/// Sorts, symmetrizes and merges overlapping/touching intervals per
/// unordered pair. Throws ParseError when events are empty or invalid.
std::vector<ContactEvent> normalize_events(std::vector<ContactEvent> events);

/// contacts.csv: `a,b,start,end`, integer seconds, optional header,
/// '#' comments. Throws ParseError with file:line context.
std::vector<ContactEvent> load_contact_events(const std::string& path);

/// stations.txt: one node id per line. Each id must appear in `nodes`.
std::set<NodeId> load_stations(const std::string& path, const std::set<NodeId>& nodes);

/// Assembles the bundle from contacts.csv + stations.txt in `dir`.
TraceBundle load_trace_dir(const std::string& dir);

/// profiles.csv: `user,component,weight` rows, normalized per user. Users
/// absent from the file receive the uniform profile over the namespace.
ProfileMap load_profiles(const std::string& path, const Catalog& catalog,
                         const std::set<NodeId>& users);
ProfileMap parse_profiles(const std::string& text, const std::string& origin,
                          const Catalog& catalog, const std::set<NodeId>& users);

void save_contacts(const std::vector<ContactEvent>& events, const std::string& path);
void save_profiles(const ProfileMap& profiles, const Catalog& catalog, const std::string& path);
void save_stations(const std::set<NodeId>& stations, const std::string& path);

// --- synthetic traces --------------------------------------------------

/// Community-structured synthetic scenario. Rates are contacts per pair
/// per hour; durations and the horizon are seconds. Users are ids
/// [0, n_users); stations [n_users, n_users + n_base_stations) are assigned
/// to communities round-robin and contacted at the intra rate by their own
/// community, the inter rate otherwise.
struct SyntheticSpec {
    int n_users = 24;
    int n_communities = 2;
    double intra_rate = 2.0;     // contacts per pair per hour
    double inter_rate = 0.2;
    Time mean_duration = 300;    // seconds
    Time horizon = 86400;
    int n_base_stations = 2;
    std::uint64_t seed = 1;
    // catalog shape (the generated namespace/data names)
    int n_components = 20;
    int n_items = 60;
};

struct SyntheticTrace {
    TraceBundle bundle;
    ProfileMap profiles;
    Catalog catalog;
};

/// Deterministic generator: identical spec -> byte-identical outputs.
/// Community k's users put 70% of their preference mass on community k's
/// component block. Data names are distinct 2-component sets, so no name
/// is a subset of another.
SyntheticTrace generate_synthetic_trace(const SyntheticSpec& spec);

int community_of(int node, int n_users, int n_communities, int n_base_stations);

}  // namespace sndn
