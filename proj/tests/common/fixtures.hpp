#pragma once

// Small scripted scenarios used by scheme and engine tests.

#include <set>
#include <vector>

#include "sndn/engine.hpp"

namespace fixtures {

using namespace sndn;

struct Scenario {
    TraceBundle bundle;
    Catalog catalog;
    ProfileMap profiles;
    SimInputs inputs;

    SimInputs* prepared() {
        inputs.bundle = &bundle;
        inputs.catalog = &catalog;
        inputs.profiles = &profiles;
        return &inputs;
    }
};

inline Scenario scripted(std::vector<ContactEvent> events, std::set<NodeId> stations,
                         const std::string& catalog_text) {
    Scenario s;
    s.bundle.events = normalize_events(std::move(events));
    for (const auto& e : s.bundle.events) {
        s.bundle.nodes.insert(e.a);
        s.bundle.nodes.insert(e.b);
        s.bundle.horizon = std::max(s.bundle.horizon, e.end);
    }
    for (NodeId st : stations) s.bundle.nodes.insert(st);
    s.bundle.base_stations = std::move(stations);
    s.catalog = parse_catalog(catalog_text, "fixture");
    return s;
}

/// Config with warm-up disabled and friendly defaults for hand traces.
inline SimConfig scripted_config(SchemeId scheme, Time ttl = 86400) {
    SimConfig cfg;
    cfg.scheme = scheme;
    cfg.ttl = ttl;
    cfg.warmup = 0;
    cfg.params.circle_threshold = 0.18;
    cfg.params.window = 36000;
    cfg.seed = 1;
    return cfg;
}

}  // namespace fixtures
