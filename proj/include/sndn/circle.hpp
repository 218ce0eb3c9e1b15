#pragma once

#include <map>
#include <vector>

#include "sndn/core.hpp"
#include "sndn/naming.hpp"
#include "sndn/social.hpp"

namespace sndn {

/// Component -> number of stored data items carrying that component.
using ComponentCountMap = std::map<ComponentId, int>;

/// Attributes a node keeps for each one-hop friend. Everything except the
/// timer is a cache captured at the last encounter with that friend.
struct FriendAttributes {
    double strength = 0.0;            // W_s when admitted
    Time expires_at = 0;              // fresh timer: admission time + T_p
    ComponentCountMap component_map;  // friend's name component map
    int item_count = 0;               // friend's content store size
    std::vector<ComponentId> neighbour_set_name;  // friend's key components
    std::vector<NodeId> branch;       // friend's neighbour ids (circle branch)
};

struct EncounterOutcome {
    bool already_friends = false;
    bool admitted = false;
    double strength = 0.0;
};

/// Per-node friendship state: content component map, neighbour set,
/// two-hop circle branches and the derived names.
class NodeCircleState {
public:
    explicit NodeCircleState(NodeId id = kNoNode) : id_(id) {}

    NodeId id() const { return id_; }

    const std::map<NodeId, FriendAttributes>& entries() const { return entries_; }
    const ComponentCountMap& own_component_map() const { return own_map_; }
    int own_item_count() const { return own_items_; }

    const std::vector<ComponentId>& neighbour_set_name() const { return own_nsn_; }
    const std::vector<ComponentId>& circle_name() const { return circle_name_; }

    bool nset_contains(NodeId node, Time at) const;
    /// Two-hop membership: the owner, a friend, or any id in a branch.
    bool circle_contains(NodeId node, Time at) const;

    /// Register a newly stored item (distinct items only).
    void add_content(const std::vector<ComponentId>& components, double kappa);

    /// Count down fresh timers to `to`; entries reaching zero are removed,
    /// their branches pruned and the names recomputed from the residual
    /// entries. Returns the removed friend ids.
    std::vector<NodeId> advance(Time to, double kappa);

    /// Recompute the neighbour-set name and circle name from current state.
    void recompute_names(double kappa);

    friend EncounterOutcome on_encounter(NodeCircleState&, NodeCircleState&, const AcquisitionLog&,
                                         const AcquisitionLog&, const PairHistory*, Time,
                                         const StrengthParams&, double);

private:
    NodeId id_;
    ComponentCountMap own_map_;
    int own_items_ = 0;
    std::map<NodeId, FriendAttributes> entries_;
    std::vector<ComponentId> own_nsn_;
    std::vector<ComponentId> circle_name_;
};

/// Contact-time friendship protocol between two users. Expires stale
/// entries first; refreshes the mutual caches when already friends (the
/// fresh timer is not reset); otherwise computes W_s and admits both sides
/// when it strictly exceeds the circle threshold.
EncounterOutcome on_encounter(NodeCircleState& a, NodeCircleState& b,
                              const AcquisitionLog& log_a, const AcquisitionLog& log_b,
                              const PairHistory* history, Time at,
                              const StrengthParams& params, double kappa);

/// tick_timers as elapsed-duration counterpart of advance().
std::vector<NodeId> tick_timers(NodeCircleState& node, Time elapsed, Time now, double kappa);

/// Pointwise sum of the owner's component map and every friend's cached map.
ComponentCountMap neighbour_component_map(const NodeCircleState& node);

/// Key name components of a member group: f_u(c) * f_d(c) > kappa, where
/// f_u is the fraction of members holding >= 1 item with c and f_d the
/// fraction of the group's data items carrying c.
std::vector<ComponentId> compute_key_components(
    const std::vector<const ComponentCountMap*>& member_maps,
    const std::vector<int>& member_item_counts, double kappa);

/// One-node, one-line state snapshot with stable key order (debug dump).
std::string dump_circle(const NodeCircleState& node, const Catalog& catalog);

}  // namespace sndn
