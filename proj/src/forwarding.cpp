#include "sndn/forwarding.hpp"

#include <algorithm>

namespace sndn {

const char* to_string(InterestPhase phase) {
    return phase == InterestPhase::macro ? "macro" : "micro";
}

const char* to_string(DataPhase phase) {
    switch (phase) {
        case DataPhase::centrality: return "centrality";
        case DataPhase::circle: return "circle";
        case DataPhase::hold: return "hold";
    }
    return "?";
}

void FibTable::update_on_encounter(NodeId peer, const std::vector<ComponentId>& peer_circle_name,
                                   Time at) {
    for (ComponentId c : peer_circle_name) entries_[c][peer] = at;
}

int FibTable::count(ComponentId component, Time at, Time window,
                    const std::vector<ComponentId>& own_circle_name) const {
    int n = std::binary_search(own_circle_name.begin(), own_circle_name.end(), component) ? 1 : 0;
    auto it = entries_.find(component);
    if (it != entries_.end()) {
        for (const auto& [peer, seen] : it->second) {
            if (seen >= at - window && seen <= at) ++n;
        }
    }
    return n;
}

long FibTable::directionality(const InterestName& interest, Time at, Time window,
                              const std::vector<ComponentId>& own_circle_name) const {
    long min_count = -1;
    for (ComponentId c : interest.sorted) {
        long r = count(c, at, window, own_circle_name);
        if (r == 0) return 0;
        if (min_count < 0 || r < min_count) min_count = r;
    }
    return min_count < 0 ? 0 : min_count;
}

long data_location(const ComponentCountMap& ncm, const InterestName& interest) {
    long min_count = -1;
    for (ComponentId c : interest.sorted) {
        auto it = ncm.find(c);
        long n = it == ncm.end() ? 0 : it->second;
        if (n == 0) return 0;
        if (min_count < 0 || n < min_count) min_count = n;
    }
    return min_count < 0 ? 0 : min_count;
}

InterestDecision interest_forward_decision(const InterestView& carrier, const InterestView& peer,
                                           InterestPhase phase) {
    if (peer.store_matches) return {InterestAction::satisfy, phase};
    if (phase == InterestPhase::macro) {
        if (peer.covers) return {InterestAction::transfer, InterestPhase::micro};
        if (peer.directionality > carrier.directionality)
            return {InterestAction::transfer, InterestPhase::macro};
        return {InterestAction::keep, phase};
    }
    // micro
    if (peer.location > carrier.location || (peer.covers && !carrier.covers))
        return {InterestAction::transfer, InterestPhase::micro};
    return {InterestAction::keep, phase};
}

DataDecision data_forward_decision(int carrier_centrality, const DataView& peer, DataPhase phase) {
    if (peer.is_consumer) return {DataAction::deliver, phase};
    switch (phase) {
        case DataPhase::hold:
            return {DataAction::keep, phase};
        case DataPhase::circle:
            if (peer.nset_has_consumer) return {DataAction::transfer, DataPhase::hold};
            return {DataAction::keep, phase};
        case DataPhase::centrality:
            if (peer.nset_has_consumer) return {DataAction::transfer, DataPhase::hold};
            if (peer.circle_has_consumer) return {DataAction::transfer, DataPhase::circle};
            if (peer.centrality > carrier_centrality)
                return {DataAction::transfer, DataPhase::centrality};
            return {DataAction::keep, phase};
    }
    return {DataAction::keep, phase};
}

DataPhase initial_data_phase(bool nset_has_consumer, bool circle_has_consumer) {
    if (nset_has_consumer) return DataPhase::hold;
    if (circle_has_consumer) return DataPhase::circle;
    return DataPhase::centrality;
}

DataPacket provider_satisfy(const PitEntry& in_record, ItemId item, NodeId provider,
                            DataPhase start_phase) {
    DataPacket data;
    data.request = in_record.request;
    data.item = item;
    data.consumer = in_record.consumer;
    data.interest_created = in_record.created;
    data.ttl = in_record.ttl;
    data.custodian = provider;
    data.phase = start_phase;
    return data;
}

}  // namespace sndn
