#pragma once

#include <map>
#include <memory>
#include <set>

#include "sndn/bloom.hpp"
#include "sndn/circle.hpp"
#include "sndn/engine.hpp"
#include "sndn/forwarding.hpp"

namespace sndn {

struct NodeState {
    NodeId id = kNoNode;
    bool station = false;
    std::set<ItemId> store;           // all content held
    std::set<ItemId> cellular_store;  // warm-up + direct-served content only
    AcquisitionLog log;
    NodeCircleState circle;
    FibTable fib;
    PitTable pit;
    std::unique_ptr<ContentSynopsis> synopsis;  // advertisement scheme only
    std::vector<int> awaiting_warmup;           // request ids waiting for a base station
    Rng request_rng{0};
};

class SchemeLogic;

/// Whole mutable state of one run; schemes operate through this.
struct Sim {
    const SimConfig& cfg;
    const SimInputs& in;
    std::map<NodeId, NodeState> nodes;
    PairHistoryStore histories;
    std::vector<Request> requests;
    std::map<int, InterestPacket> live_interests;  // request id -> packet
    std::map<int, DataPacket> live_data;
    EventLog log;
    std::vector<NodeId> station_ids;  // sorted, excluded from centrality
    std::unique_ptr<SchemeLogic> scheme;
    int skipped = 0;

    Sim(const SimConfig& c, const SimInputs& i) : cfg(c), in(i) {}

    NodeState& node(NodeId id) { return nodes.at(id); }
    Request& request(int id) { return requests.at(static_cast<std::size_t>(id)); }

    bool in_station_contact(NodeId user, Time at) const;
    std::vector<NodeId> active_user_peers(NodeId user, Time at) const;
    int centrality(NodeId user, Time at) const;
    /// Windowed degree restricted to the node's own circle members.
    int local_centrality(NodeId user, Time at) const;

    /// Smallest-id stored item matching the interest, if any.
    ItemId store_match(const NodeState& node, const InterestName& interest) const;
    bool cellular_match(const NodeState& node, const InterestName& interest) const;

    /// Insert content (if new), update component map, log the acquisition
    /// and fire the store-gain hook.
    void add_content(NodeState& node, ItemId item, Time at, bool cellular);

    void deliver(DataPacket& packet, Time at);
    /// Retire the Interest, install the provider-side PIT records and spawn
    /// the Data packet at `provider`.
    DataPacket& satisfy(InterestPacket& packet, NodeId carrier, NodeId provider, Time at);
};

/// Per-contact packet logic of one retrieval scheme.
class SchemeLogic {
public:
    virtual ~SchemeLogic() = default;
    /// Put a freshly created cooperative request into circulation.
    virtual void inject(Sim& sim, Request& request, Time at) = 0;
    /// Packet exchange between two users in contact (contact start).
    virtual void pair_logic(Sim& sim, NodeId a, NodeId b, Time at) = 0;
    /// Evaluate a newly injected packet against the consumer's active contacts.
    virtual void creation_logic(Sim& sim, Request& request, Time at) = 0;
    /// Drop this request's live packets (TTL expiry).
    virtual void expire_packets(Sim& sim, Request& request, Time at) = 0;
    /// A node's store gained an item (advertisement/flooding hooks).
    virtual void store_gain(Sim& sim, NodeId node, ItemId item, Time at) { (void)sim; (void)node; (void)item; (void)at; }
    /// Contact-time bookkeeping that runs even during warm-up.
    virtual void exchange_state(Sim& sim, NodeId a, NodeId b, Time at) { (void)sim; (void)a; (void)b; (void)at; }
};

std::unique_ptr<SchemeLogic> make_scheme(SchemeId id);

/// Shared single-copy helpers (used by every scheme except flooding).
void single_copy_expire(Sim& sim, Request& request, Time at);
bool data_pair_step(Sim& sim, DataPacket& packet, NodeId peer, Time at, int& budget);
void process_pair_packets(Sim& sim, NodeId a, NodeId b, Time at,
                          bool (*interest_step)(Sim&, InterestPacket&, NodeId, Time, int&));

}  // namespace sndn
