#include <algorithm>
#include <climits>
#include <deque>

#include "sim_internal.hpp"

namespace sndn {

namespace {

void install_pit(NodeState& node, const InterestPacket& packet, int centrality_stamp) {
    PitEntry entry;
    entry.request = packet.request;
    entry.interest = packet.name;
    entry.consumer = packet.consumer;
    entry.created = packet.created;
    entry.ttl = packet.ttl;
    entry.centrality_stamp = centrality_stamp;
    node.pit[packet.request] = entry;
}

DataView data_view_of(Sim& sim, NodeId peer, NodeId consumer, Time at) {
    const NodeState& p = sim.node(peer);
    DataView v;
    v.is_consumer = peer == consumer;
    v.nset_has_consumer = p.circle.nset_contains(consumer, at);
    v.circle_has_consumer = p.circle.circle_contains(consumer, at);
    v.centrality = sim.centrality(peer, at);
    return v;
}

}  // namespace

bool data_pair_step(Sim& sim, DataPacket& packet, NodeId peer, Time at, int& budget) {
    DataView peer_view = data_view_of(sim, peer, packet.consumer, at);
    DataDecision d = data_forward_decision(sim.centrality(packet.custodian, at), peer_view,
                                           packet.phase);
    switch (d.action) {
        case DataAction::deliver: {
            int id = packet.request;
            sim.deliver(packet, at);
            sim.live_data.erase(id);
            return true;
        }
        case DataAction::transfer: {
            if (budget <= 0) return false;
            --budget;
            NodeId from = packet.custodian;
            packet.custodian = peer;
            packet.phase = d.phase;
            ++packet.hops;
            sim.log.add(at, packet.request, LogEvent::transfer, from, peer, to_string(d.phase),
                        packet.hops);
            return false;
        }
        case DataAction::keep:
            return false;
    }
    return false;
}

namespace {

/// Applies an interest decision; consumes the packet on satisfy. Returns
/// true when the request left the interest stage.
bool apply_interest_decision(Sim& sim, InterestPacket& packet, NodeId peer, Time at,
                             const InterestDecision& d, const char* transfer_label, int& budget) {
    switch (d.action) {
        case InterestAction::satisfy: {
            NodeId carrier = packet.custodian;
            DataPacket& data = sim.satisfy(packet, carrier, peer, at);
            // the reply can use the live contact straight away
            data_pair_step(sim, data, carrier, at, budget);
            return true;
        }
        case InterestAction::transfer: {
            if (budget <= 0) return false;
            --budget;
            NodeId from = packet.custodian;
            packet.custodian = peer;
            packet.phase = d.phase;
            ++packet.hops;
            install_pit(sim.node(peer), packet, sim.centrality(peer, at));
            sim.log.add(at, packet.request, LogEvent::transfer, from, peer,
                        transfer_label ? transfer_label : to_string(d.phase), packet.hops);
            return false;
        }
        case InterestAction::keep:
            return false;
    }
    return false;
}

/// Interest + data sweep over all live packets held by either side of a
/// contact, in request creation order.
template <typename InterestStep>
void sweep_pair(Sim& sim, NodeId a, NodeId b, Time at, InterestStep&& step) {
    int budget = sim.cfg.link_budget > 0 ? sim.cfg.link_budget : INT_MAX;
    std::vector<int> ids;
    for (const auto& [id, p] : sim.live_interests)
        if (p.custodian == a || p.custodian == b) ids.push_back(id);
    for (const auto& [id, p] : sim.live_data)
        if (p.custodian == a || p.custodian == b) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids) {
        if (auto it = sim.live_interests.find(id); it != sim.live_interests.end()) {
            InterestPacket& packet = it->second;
            NodeId peer = packet.custodian == a ? b : a;
            step(packet, peer, budget);
        } else if (auto dt = sim.live_data.find(id); dt != sim.live_data.end()) {
            DataPacket& packet = dt->second;
            NodeId peer = packet.custodian == a ? b : a;
            data_pair_step(sim, packet, peer, at, budget);
        }
    }
}

/// Creates the single-copy interest packet at the consumer; serves the
/// degenerate case where the consumer's own store already matches.
void inject_single_copy(Sim& sim, Request& r, Time at, InterestPhase phase,
                        const char* phase_label) {
    NodeState& consumer = sim.node(r.consumer);
    InterestPacket packet;
    packet.request = r.id;
    packet.name = r.interest;
    packet.consumer = r.consumer;
    packet.created = at;
    packet.ttl = sim.cfg.ttl;
    packet.custodian = r.consumer;
    packet.phase = phase;
    install_pit(consumer, packet, sim.centrality(r.consumer, at));
    sim.log.add(at, r.id, LogEvent::created, kNoNode, r.consumer, phase_label, 0);
    auto [it, ok] = sim.live_interests.emplace(r.id, std::move(packet));
    if (sim.store_match(consumer, r.interest) != kNoItem) {
        int budget = INT_MAX;
        DataPacket& data = sim.satisfy(it->second, r.consumer, r.consumer, at);
        data_pair_step(sim, data, r.consumer, at, budget);
    }
}

void single_copy_creation_logic(Sim& sim, Request& r, Time at,
                                void (*pair_fn)(Sim&, NodeId, NodeId, Time)) {
    for (NodeId peer : sim.active_user_peers(r.consumer, at)) {
        if (!sim.live_interests.count(r.id) && !sim.live_data.count(r.id)) break;
        pair_fn(sim, r.consumer, peer, at);
    }
}

}  // namespace

void single_copy_expire(Sim& sim, Request& r, Time at) {
    if (auto it = sim.live_interests.find(r.id); it != sim.live_interests.end()) {
        sim.log.add(at, r.id, LogEvent::drop, it->second.custodian, kNoNode,
                    to_string(it->second.phase), it->second.hops);
        sim.live_interests.erase(it);
    } else if (auto dt = sim.live_data.find(r.id); dt != sim.live_data.end()) {
        sim.log.add(at, r.id, LogEvent::drop, dt->second.custodian, kNoNode,
                    to_string(dt->second.phase), dt->second.hops);
        sim.live_data.erase(dt);
    }
}

// --- sNDN ------------------------------------------------------------------

namespace {

class SndnScheme : public SchemeLogic {
public:
    void inject(Sim& sim, Request& r, Time at) override {
        const NodeState& consumer = sim.node(r.consumer);
        bool covered = name_covers(consumer.circle.circle_name(), r.interest);
        InterestPhase phase = covered ? InterestPhase::micro : InterestPhase::macro;
        inject_single_copy(sim, r, at, phase, to_string(phase));
    }

    void pair_logic(Sim& sim, NodeId a, NodeId b, Time at) override { pair(sim, a, b, at); }

    void creation_logic(Sim& sim, Request& r, Time at) override {
        single_copy_creation_logic(sim, r, at, &SndnScheme::pair);
    }

    void expire_packets(Sim& sim, Request& r, Time at) override {
        single_copy_expire(sim, r, at);
    }

private:
    static InterestView view_of(Sim& sim, NodeId node, const InterestPacket& packet, Time at,
                                bool with_store) {
        const NodeState& n = sim.node(node);
        InterestView v;
        v.directionality = n.fib.directionality(packet.name, at, sim.cfg.params.window,
                                                n.circle.circle_name());
        v.location = data_location(neighbour_component_map(n.circle), packet.name);
        v.covers = name_covers(n.circle.circle_name(), packet.name);
        v.store_matches = with_store && sim.store_match(n, packet.name) != kNoItem;
        return v;
    }

    static void pair(Sim& sim, NodeId a, NodeId b, Time at) {
        sweep_pair(sim, a, b, at, [&](InterestPacket& packet, NodeId peer, int& budget) {
            InterestView carrier = view_of(sim, packet.custodian, packet, at, false);
            InterestView pv = view_of(sim, peer, packet, at, true);
            InterestDecision d = interest_forward_decision(carrier, pv, packet.phase);
            apply_interest_decision(sim, packet, peer, at, d, nullptr, budget);
        });
    }
};

// --- Direct ------------------------------------------------------------

class DirectScheme : public SchemeLogic {
public:
    void inject(Sim& sim, Request& r, Time at) override {
        inject_single_copy(sim, r, at, InterestPhase::macro, "direct");
    }

    void pair_logic(Sim& sim, NodeId a, NodeId b, Time at) override { pair(sim, a, b, at); }

    void creation_logic(Sim& sim, Request& r, Time at) override {
        single_copy_creation_logic(sim, r, at, &DirectScheme::pair);
    }

    void expire_packets(Sim& sim, Request& r, Time at) override {
        single_copy_expire(sim, r, at);
    }

private:
    static void pair(Sim& sim, NodeId a, NodeId b, Time at) {
        sweep_pair(sim, a, b, at, [&](InterestPacket& packet, NodeId peer, int& budget) {
            // the consumer keeps her own interest; only a direct provider
            // contact satisfies it
            if (sim.store_match(sim.node(peer), packet.name) == kNoItem) return;
            InterestDecision d{InterestAction::satisfy, packet.phase};
            apply_interest_decision(sim, packet, peer, at, d, nullptr, budget);
        });
    }
};

// --- FC-BubbleRap --------------------------------------------------------
//
// Interest: global centrality ascent until a circle name covers the
// interest, then local (circle-restricted) centrality ascent. Data routing
// is shared with sNDN.

class FcBubbleRapScheme : public SchemeLogic {
public:
    void inject(Sim& sim, Request& r, Time at) override {
        const NodeState& consumer = sim.node(r.consumer);
        bool covered = name_covers(consumer.circle.circle_name(), r.interest);
        InterestPhase phase = covered ? InterestPhase::micro : InterestPhase::macro;
        inject_single_copy(sim, r, at, phase, to_string(phase));
    }

    void pair_logic(Sim& sim, NodeId a, NodeId b, Time at) override { pair(sim, a, b, at); }

    void creation_logic(Sim& sim, Request& r, Time at) override {
        single_copy_creation_logic(sim, r, at, &FcBubbleRapScheme::pair);
    }

    void expire_packets(Sim& sim, Request& r, Time at) override {
        single_copy_expire(sim, r, at);
    }

private:
    static void pair(Sim& sim, NodeId a, NodeId b, Time at) {
        sweep_pair(sim, a, b, at, [&](InterestPacket& packet, NodeId peer, int& budget) {
            const NodeState& p = sim.node(peer);
            InterestDecision d{InterestAction::keep, packet.phase};
            if (sim.store_match(p, packet.name) != kNoItem) {
                d.action = InterestAction::satisfy;
            } else if (packet.phase == InterestPhase::macro) {
                if (name_covers(p.circle.circle_name(), packet.name)) {
                    d = {InterestAction::transfer, InterestPhase::micro};
                } else if (sim.centrality(peer, at) > sim.centrality(packet.custodian, at)) {
                    d = {InterestAction::transfer, InterestPhase::macro};
                }
            } else if (sim.local_centrality(peer, at) > sim.local_centrality(packet.custodian, at)) {
                d = {InterestAction::transfer, InterestPhase::micro};
            }
            apply_interest_decision(sim, packet, peer, at, d, nullptr, budget);
        });
    }
};

// --- STCR-style advertisement scheme ------------------------------------
//
// Lower-centrality side advertises its content names into the higher side's
// Bloom synopsis. Unresolved consumers query encountered synopses; a hit
// binds the request to that provider and the interest then rides a
// centrality ascent until it reaches him. A false-positive binding unbinds
// at the target and discovery resumes. Data routing is shared with sNDN.

class StcrScheme : public SchemeLogic {
public:
    void inject(Sim& sim, Request& r, Time at) override {
        inject_single_copy(sim, r, at, InterestPhase::macro, "discovery");
    }

    void exchange_state(Sim& sim, NodeId a, NodeId b, Time at) override {
        int ca = sim.centrality(a, at);
        int cb = sim.centrality(b, at);
        if (ca == cb) return;
        NodeState& low = sim.node(ca < cb ? a : b);
        NodeState& high = sim.node(ca < cb ? b : a);
        for (ItemId item : low.store)
            high.synopsis->advertise(sim.in.catalog->name(item).sorted, low.id, at);
    }

    void pair_logic(Sim& sim, NodeId a, NodeId b, Time at) override {
        sweep_pair(sim, a, b, at, [&](InterestPacket& packet, NodeId peer, int& budget) {
            step(sim, packet, peer, at, budget);
        });
    }

    void creation_logic(Sim& sim, Request& r, Time at) override {
        for (NodeId peer : sim.active_user_peers(r.consumer, at)) {
            if (!sim.live_interests.count(r.id) && !sim.live_data.count(r.id)) break;
            pair_logic(sim, r.consumer, peer, at);
        }
    }

    void expire_packets(Sim& sim, Request& r, Time at) override {
        bound_.erase(r.id);
        single_copy_expire(sim, r, at);
    }

private:
    void step(Sim& sim, InterestPacket& packet, NodeId peer, Time at, int& budget) {
        NodeState& p = sim.node(peer);
        if (sim.store_match(p, packet.name) != kNoItem) {
            InterestDecision d{InterestAction::satisfy, packet.phase};
            if (apply_interest_decision(sim, packet, peer, at, d, nullptr, budget))
                bound_.erase(packet.request);
            return;
        }
        auto bound = bound_.find(packet.request);
        if (bound == bound_.end() && p.synopsis) {
            auto target = p.synopsis->query(packet.name.sorted, at, sim.cfg.params.window, peer);
            if (target) {
                bound = bound_.emplace(packet.request, *target).first;
                packet.phase = InterestPhase::micro;
            }
        }
        if (bound == bound_.end()) return;  // unresolved: discovery only
        if (bound->second == peer || bound->second == packet.custodian) {
            // reached the bound node but it lacks the data: false positive
            bound_.erase(bound);
            packet.phase = InterestPhase::macro;
            return;
        }
        if (sim.centrality(peer, at) > sim.centrality(packet.custodian, at)) {
            InterestDecision d{InterestAction::transfer, InterestPhase::micro};
            apply_interest_decision(sim, packet, peer, at, d, "bound", budget);
        }
    }

    std::map<int, NodeId> bound_;
};

// --- Flood ----------------------------------------------------------------
//
// Ideal-transfer flooding: every live packet copy propagates instantly
// across the whole active-contact component. Upper bound on delivery ratio
// and delay; unbounded buffers, no custody discipline.

class FloodScheme : public SchemeLogic {
public:
    void inject(Sim& sim, Request& r, Time at) override {
        sim.log.add(at, r.id, LogEvent::created, kNoNode, r.consumer, "flood", 0);
        FloodReq& req = state_[r.id];
        req.interest_holders.insert(r.consumer);
        tasks_.push_back(Task{Task::kArrive, r.id, 0, r.consumer});
        drive(sim, at);
    }

    void pair_logic(Sim& sim, NodeId a, NodeId b, Time at) override {
        for (const auto& [id, req] : state_) {
            if (sim.request(id).status != RequestStatus::pending) continue;
            bool ia = req.interest_holders.count(a), ib = req.interest_holders.count(b);
            if (ia != ib) tasks_.push_back(Task{Task::kSpread, id, 0, ia ? a : b});
            bool da = req.data_holders.count(a), db = req.data_holders.count(b);
            if (da != db) tasks_.push_back(Task{Task::kSpread, id, 1, da ? a : b});
        }
        drive(sim, at);
    }

    void creation_logic(Sim& sim, Request& r, Time at) override {
        (void)sim;
        (void)r;
        (void)at;  // inject already flooded the active component
    }

    void expire_packets(Sim& sim, Request& r, Time at) override {
        auto it = state_.find(r.id);
        if (it == state_.end()) return;
        for (NodeId n : it->second.interest_holders)
            sim.log.add(at, r.id, LogEvent::drop, n, kNoNode, "flood", it->second.copies);
        for (const auto& [n, item] : it->second.data_holders)
            sim.log.add(at, r.id, LogEvent::drop, n, kNoNode, "flood", it->second.copies);
        state_.erase(it);
    }

    void store_gain(Sim& sim, NodeId node, ItemId item, Time at) override {
        (void)item;
        tasks_.push_back(Task{Task::kRecheck, -1, 0, node});
        drive(sim, at);
    }

private:
    struct FloodReq {
        std::set<NodeId> interest_holders;
        std::map<NodeId, ItemId> data_holders;
        std::set<NodeId> satisfied_at;
        int interest_copies = 0;
        int data_copies = 0;
        int copies = 0;
    };

    struct Task {
        enum Kind { kArrive, kSpread, kRecheck } kind;
        int request;
        int packet;  // 0 interest, 1 data
        NodeId node;
    };

    void drive(Sim& sim, Time at) {
        if (driving_) return;
        driving_ = true;
        while (!tasks_.empty()) {
            Task t = tasks_.front();
            tasks_.pop_front();
            switch (t.kind) {
                case Task::kArrive: arrive(sim, t.request, t.packet, t.node, at); break;
                case Task::kSpread: spread(sim, t.request, t.packet, t.node, at); break;
                case Task::kRecheck: recheck(sim, t.node, at); break;
            }
        }
        driving_ = false;
    }

    // a copy landed on `node`: satisfaction/delivery checks, then fan out
    void arrive(Sim& sim, int id, int packet, NodeId node, Time at) {
        auto st = state_.find(id);
        if (st == state_.end() || sim.request(id).status != RequestStatus::pending) return;
        FloodReq& req = st->second;
        Request& r = sim.request(id);
        if (packet == 0) {
            ItemId match = sim.store_match(sim.node(node), r.interest);
            if (match != kNoItem && !req.satisfied_at.count(node)) {
                req.satisfied_at.insert(node);
                sim.log.add(at, id, LogEvent::satisfy, node, node, "flood", req.copies);
                if (node == r.consumer) {
                    finish(sim, req, r, node, match, at);
                    return;
                }
                req.data_holders.emplace(node, match);
                tasks_.push_back(Task{Task::kSpread, id, 1, node});
            }
        } else {
            auto holder = req.data_holders.find(node);
            if (holder != req.data_holders.end() && node == r.consumer) {
                finish(sim, req, r, node, holder->second, at);
                return;
            }
        }
        tasks_.push_back(Task{Task::kSpread, id, packet, node});
    }

    void spread(Sim& sim, int id, int packet, NodeId node, Time at) {
        auto st = state_.find(id);
        if (st == state_.end() || sim.request(id).status != RequestStatus::pending) return;
        FloodReq& req = st->second;
        Request& r = sim.request(id);
        if (packet == 0 && !req.interest_holders.count(node)) return;
        if (packet == 1 && !req.data_holders.count(node)) return;
        for (NodeId peer : sim.active_user_peers(node, at)) {
            if (sim.request(id).status != RequestStatus::pending) return;
            if (packet == 0) {
                if (req.interest_holders.count(peer)) continue;
                req.interest_holders.insert(peer);
                ++req.interest_copies;
                ++req.copies;
                sim.log.add(at, id, LogEvent::transfer, node, peer, "flood", req.copies);
                arrive(sim, id, 0, peer, at);
            } else {
                if (req.data_holders.count(peer)) continue;
                ItemId item = req.data_holders.at(node);
                if (peer == r.consumer) {
                    // final handover is the delivery, not a relay copy
                    finish(sim, req, r, node, item, at);
                    return;
                }
                req.data_holders.emplace(peer, item);
                ++req.data_copies;
                ++req.copies;
                sim.log.add(at, id, LogEvent::transfer, node, peer, "flood", req.copies);
                arrive(sim, id, 1, peer, at);
            }
        }
    }

    void recheck(Sim& sim, NodeId node, Time at) {
        (void)at;
        for (auto& [id, req] : state_) {
            Request& r = sim.request(id);
            if (r.status != RequestStatus::pending) continue;
            if (!req.interest_holders.count(node) || req.satisfied_at.count(node)) continue;
            tasks_.push_back(Task{Task::kArrive, id, 0, node});
        }
    }

    void finish(Sim& sim, FloodReq& req, Request& r, NodeId from, ItemId item, Time at) {
        r.status = RequestStatus::delivered;
        r.delivered_at = at;
        r.interest_hops = req.interest_copies;
        r.data_hops = req.data_copies;
        sim.log.add(at, r.id, LogEvent::deliver, from, r.consumer, "flood", req.data_copies);
        req.interest_holders.clear();
        req.data_holders.clear();
        sim.add_content(sim.node(r.consumer), item, at, false);
    }

    std::map<int, FloodReq> state_;
    std::deque<Task> tasks_;
    bool driving_ = false;
};

}  // namespace

std::unique_ptr<SchemeLogic> make_scheme(SchemeId id) {
    switch (id) {
        case SchemeId::sndn: return std::make_unique<SndnScheme>();
        case SchemeId::flood: return std::make_unique<FloodScheme>();
        case SchemeId::direct: return std::make_unique<DirectScheme>();
        case SchemeId::fc_bubblerap: return std::make_unique<FcBubbleRapScheme>();
        case SchemeId::stcr: return std::make_unique<StcrScheme>();
    }
    return nullptr;
}

}  // namespace sndn
