#include "sndn/circle.hpp"

#include <algorithm>
#include <sstream>

namespace sndn {

bool NodeCircleState::nset_contains(NodeId node, Time at) const {
    auto it = entries_.find(node);
    return it != entries_.end() && it->second.expires_at > at;
}

bool NodeCircleState::circle_contains(NodeId node, Time at) const {
    if (node == id_) return true;
    for (const auto& [fid, attrs] : entries_) {
        if (attrs.expires_at <= at) continue;
        if (fid == node) return true;
        if (std::find(attrs.branch.begin(), attrs.branch.end(), node) != attrs.branch.end())
            return true;
    }
    return false;
}

void NodeCircleState::add_content(const std::vector<ComponentId>& components, double kappa) {
    for (ComponentId c : components) ++own_map_[c];
    ++own_items_;
    recompute_names(kappa);
}

std::vector<NodeId> NodeCircleState::advance(Time to, double kappa) {
    std::vector<NodeId> removed;
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second.expires_at <= to) {
            removed.push_back(it->first);
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
    if (!removed.empty()) recompute_names(kappa);
    return removed;
}

std::vector<ComponentId> compute_key_components(
    const std::vector<const ComponentCountMap*>& member_maps,
    const std::vector<int>& member_item_counts, double kappa) {
    ComponentCountMap aggregate;
    std::map<ComponentId, int> holders;
    long total_items = 0;
    for (std::size_t i = 0; i < member_maps.size(); ++i) {
        total_items += member_item_counts[i];
        for (const auto& [c, n] : *member_maps[i]) {
            aggregate[c] += n;
            if (n > 0) ++holders[c];
        }
    }
    std::vector<ComponentId> keys;
    if (total_items == 0 || member_maps.empty()) return keys;
    double members = static_cast<double>(member_maps.size());
    for (const auto& [c, n] : aggregate) {
        double fu = holders[c] / members;
        double fd = static_cast<double>(n) / static_cast<double>(total_items);
        if (fu * fd > kappa) keys.push_back(c);
    }
    return keys;  // map iteration order keeps this sorted
}

void NodeCircleState::recompute_names(double kappa) {
    std::vector<const ComponentCountMap*> maps;
    std::vector<int> counts;
    maps.push_back(&own_map_);
    counts.push_back(own_items_);
    for (const auto& [fid, attrs] : entries_) {
        maps.push_back(&attrs.component_map);
        counts.push_back(attrs.item_count);
    }
    own_nsn_ = compute_key_components(maps, counts, kappa);

    std::vector<ComponentId> circle = own_nsn_;
    for (const auto& [fid, attrs] : entries_) {
        circle.insert(circle.end(), attrs.neighbour_set_name.begin(),
                      attrs.neighbour_set_name.end());
    }
    std::sort(circle.begin(), circle.end());
    circle.erase(std::unique(circle.begin(), circle.end()), circle.end());
    circle_name_ = std::move(circle);
}

namespace {

FriendAttributes snapshot_of(const NodeCircleState& peer, double strength, Time expires) {
    FriendAttributes attrs;
    attrs.strength = strength;
    attrs.expires_at = expires;
    attrs.component_map = peer.own_component_map();
    attrs.item_count = peer.own_item_count();
    attrs.neighbour_set_name = peer.neighbour_set_name();
    for (const auto& [fid, a] : peer.entries()) attrs.branch.push_back(fid);
    return attrs;
}

void refresh_cache(FriendAttributes& attrs, const NodeCircleState& peer) {
    attrs.component_map = peer.own_component_map();
    attrs.item_count = peer.own_item_count();
    attrs.neighbour_set_name = peer.neighbour_set_name();
    attrs.branch.clear();
    for (const auto& [fid, a] : peer.entries()) attrs.branch.push_back(fid);
}

}  // namespace

EncounterOutcome on_encounter(NodeCircleState& a, NodeCircleState& b,
                              const AcquisitionLog& log_a, const AcquisitionLog& log_b,
                              const PairHistory* history, Time at,
                              const StrengthParams& params, double kappa) {
    a.advance(at, kappa);
    b.advance(at, kappa);

    EncounterOutcome outcome;
    auto ia = a.entries_.find(b.id());
    if (ia != a.entries_.end()) {
        // already friends: no W_s recomputation, timer untouched; refresh
        // the exchanged caches on both sides
        outcome.already_friends = true;
        outcome.strength = ia->second.strength;
        auto ib = b.entries_.find(a.id());
        refresh_cache(ia->second, b);
        if (ib != b.entries_.end()) refresh_cache(ib->second, a);
        a.recompute_names(kappa);
        b.recompute_names(kappa);
        return outcome;
    }

    double ws = pair_social_strength(log_a, log_b, history, at, params);
    outcome.strength = ws;
    if (ws > params.circle_threshold) {
        outcome.admitted = true;
        Time expires = at + params.window;
        FriendAttributes for_a = snapshot_of(b, ws, expires);
        FriendAttributes for_b = snapshot_of(a, ws, expires);
        a.entries_.emplace(b.id(), std::move(for_a));
        b.entries_.emplace(a.id(), std::move(for_b));
        a.recompute_names(kappa);
        b.recompute_names(kappa);
    }
    return outcome;
}

std::vector<NodeId> tick_timers(NodeCircleState& node, Time elapsed, Time now, double kappa) {
    (void)elapsed;
    return node.advance(now, kappa);
}

ComponentCountMap neighbour_component_map(const NodeCircleState& node) {
    ComponentCountMap out = node.own_component_map();
    for (const auto& [fid, attrs] : node.entries()) {
        for (const auto& [c, n] : attrs.component_map) out[c] += n;
    }
    return out;
}

std::string dump_circle(const NodeCircleState& node, const Catalog& catalog) {
    std::ostringstream out;
    out << "{\"node\":" << node.id() << ",\"nset\":[";
    bool first = true;
    for (const auto& [fid, attrs] : node.entries()) {
        if (!first) out << ",";
        first = false;
        out << "{\"friend\":" << fid << ",\"strength\":" << format_double(attrs.strength, 4)
            << ",\"expires\":" << attrs.expires_at << ",\"branch\":[";
        for (std::size_t i = 0; i < attrs.branch.size(); ++i) {
            if (i) out << ",";
            out << attrs.branch[i];
        }
        out << "]}";
    }
    out << "],\"nsn\":\"" << catalog.display_components(node.neighbour_set_name())
        << "\",\"circle\":\"" << catalog.display_components(node.circle_name()) << "\"}";
    return out.str();
}

}  // namespace sndn
