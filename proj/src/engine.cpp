#include "sndn/engine.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "sim_internal.hpp"

namespace sndn {

const char* to_string(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::sndn: return "sndn";
        case SchemeId::flood: return "flood";
        case SchemeId::direct: return "direct";
        case SchemeId::fc_bubblerap: return "fc_bubblerap";
        case SchemeId::stcr: return "stcr";
    }
    return "?";
}

std::optional<SchemeId> parse_scheme(const std::string& name) {
    if (name == "sndn") return SchemeId::sndn;
    if (name == "flood") return SchemeId::flood;
    if (name == "direct") return SchemeId::direct;
    if (name == "fc_bubblerap") return SchemeId::fc_bubblerap;
    if (name == "stcr") return SchemeId::stcr;
    return std::nullopt;
}

const char* to_string(RequestStatus status) {
    switch (status) {
        case RequestStatus::pending: return "pending";
        case RequestStatus::delivered: return "delivered";
        case RequestStatus::expired: return "expired";
        case RequestStatus::direct_served: return "direct_served";
        case RequestStatus::warmup_pending: return "warmup_pending";
        case RequestStatus::warmup_served: return "warmup_served";
        case RequestStatus::warmup_expired: return "warmup_expired";
    }
    return "?";
}

const char* to_string(LogEvent e) {
    switch (e) {
        case LogEvent::created: return "created";
        case LogEvent::transfer: return "transfer";
        case LogEvent::satisfy: return "satisfy";
        case LogEvent::deliver: return "deliver";
        case LogEvent::drop: return "drop";
    }
    return "?";
}

std::optional<LogEvent> parse_log_event(const std::string& name) {
    if (name == "created") return LogEvent::created;
    if (name == "transfer") return LogEvent::transfer;
    if (name == "satisfy") return LogEvent::satisfy;
    if (name == "deliver") return LogEvent::deliver;
    if (name == "drop") return LogEvent::drop;
    return std::nullopt;
}

void SimConfig::validate() const {
    if (ttl <= 0) throw ParseError("ttl must be > 0");
    if (request_interval <= 0) throw ParseError("request_interval must be > 0");
    if (params.window <= 0) throw ParseError("tp window must be > 0");
    if (params.freshness_tick <= 0) throw ParseError("freshness_tick must be > 0");
    if (params.alpha < 0 || params.alpha > 1) throw ParseError("alpha must be in [0,1]");
    if (direct_serve_prob < 0 || direct_serve_prob > 1)
        throw ParseError("direct_serve_prob must be in [0,1]");
    if (kappa <= 0 || kappa >= 1) throw ParseError("kappa must be in (0,1)");
    if (warmup < 0) throw ParseError("warmup must be >= 0");
    if (warmup_ttl <= 0) throw ParseError("warmup_ttl must be > 0");
    if (params.circle_threshold < 0) throw ParseError("circle_threshold must be >= 0");
    if (link_budget < 0) throw ParseError("link_budget must be >= 0");
}

void EventLog::add(Time t, int request, LogEvent e, NodeId from, NodeId to,
                   const std::string& phase, int hops) {
    rows.push_back(LogRow{t, request, e, from, to, phase, hops});
}

std::string EventLog::to_csv(SchemeId scheme) const {
    std::ostringstream out;
    out << "time,request_id,event,from,to,phase,hops,scheme\n";
    const char* s = to_string(scheme);
    for (const auto& r : rows) {
        out << r.time << "," << r.request << "," << to_string(r.event) << "," << r.from << ","
            << r.to << "," << r.phase << "," << r.hops << "," << s << "\n";
    }
    return out.str();
}

std::vector<LogRow> parse_event_csv(const std::string& text) {
    std::vector<LogRow> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || trim(line).empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 8) throw ParseError("events csv line " + std::to_string(lineno) + ": bad field count");
        LogRow r;
        r.time = std::stoll(f[0]);
        r.request = std::stoi(f[1]);
        auto ev = parse_log_event(f[2]);
        if (!ev) throw ParseError("events csv line " + std::to_string(lineno) + ": bad event " + f[2]);
        r.event = *ev;
        r.from = static_cast<NodeId>(std::stol(f[3]));
        r.to = static_cast<NodeId>(std::stol(f[4]));
        r.phase = f[5];
        r.hops = std::stoi(f[6]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string metrics_csv_header() {
    return "scheme,ttl,alpha,tp,kappa,seed,delivery_ratio,actual_delay_s,overhead,delivered,"
           "expired,direct_served";
}

std::string metrics_csv_row(const SimConfig& config, const MetricsReport& m) {
    std::ostringstream out;
    out << to_string(config.scheme) << "," << config.ttl << ","
        << format_compact(config.params.alpha) << "," << config.params.window << ","
        << format_compact(config.kappa) << "," << m.seed << ","
        << format_double(m.delivery_ratio, 6) << "," << format_double(m.actual_delay_s, 3) << ","
        << format_double(m.overhead, 6) << "," << m.delivered << "," << m.expired << ","
        << m.direct_served;
    return out.str();
}

MetricsReport compute_metrics(const std::vector<Request>& requests) {
    MetricsReport m;
    double delay_sum = 0;
    long hop_sum = 0;
    for (const auto& r : requests) {
        switch (r.status) {
            case RequestStatus::pending:
                ++m.created;
                ++m.pending;
                break;
            case RequestStatus::delivered:
                ++m.created;
                ++m.delivered;
                delay_sum += static_cast<double>(r.delivered_at - r.created);
                hop_sum += r.interest_hops + r.data_hops;
                break;
            case RequestStatus::expired:
                ++m.created;
                ++m.expired;
                break;
            case RequestStatus::direct_served:
                ++m.direct_served;
                break;
            case RequestStatus::warmup_served:
                ++m.warmup_served;
                break;
            case RequestStatus::warmup_expired:
            case RequestStatus::warmup_pending:
                ++m.warmup_expired;
                break;
        }
    }
    int denom = m.delivered + m.expired + m.pending;
    m.delivery_ratio = denom > 0 ? static_cast<double>(m.delivered) / denom : 0.0;
    m.actual_delay_s = m.delivered > 0 ? delay_sum / m.delivered : 0.0;
    m.overhead = m.delivered > 0 ? static_cast<double>(hop_sum) / m.delivered : 0.0;
    return m;
}

std::string trace_input_hash(const SimInputs& inputs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& e : inputs.bundle->events) {
        std::int64_t vals[4] = {e.a, e.b, e.start, e.end};
        h = fnv1a64(vals, sizeof(vals), h);
    }
    for (NodeId s : inputs.bundle->base_stations) h = fnv1a64(&s, sizeof(s), h);
    for (std::size_t i = 0; i < inputs.catalog->size(); ++i)
        h = fnv1a64(inputs.catalog->display(static_cast<ItemId>(i)), h);
    if (inputs.profiles) {
        for (const auto& [user, p] : *inputs.profiles) {
            h = fnv1a64(&user, sizeof(user), h);
            for (const auto& [c, w] : p.weights) {
                h = fnv1a64(&c, sizeof(c), h);
                h = fnv1a64(format_compact(w), h);
            }
        }
    }
    return to_hex16(h);
}

// --- Sim helpers -----------------------------------------------------------

bool Sim::in_station_contact(NodeId user, Time at) const {
    for (NodeId s : station_ids) {
        if (histories.in_contact(user, s, at)) return true;
    }
    return false;
}

std::vector<NodeId> Sim::active_user_peers(NodeId user, Time at) const {
    std::vector<NodeId> out;
    for (NodeId p : histories.peers(user)) {
        if (std::binary_search(station_ids.begin(), station_ids.end(), p)) continue;
        if (histories.in_contact(user, p, at)) out.push_back(p);
    }
    return out;
}

int Sim::centrality(NodeId user, Time at) const {
    return histories.degree_centrality(user, at, cfg.params.window, station_ids);
}

int Sim::local_centrality(NodeId user, Time at) const {
    const NodeCircleState& circle = nodes.at(user).circle;
    Time from = std::max<Time>(0, at - cfg.params.window);
    int count = 0;
    for (NodeId p : histories.peers(user)) {
        if (std::binary_search(station_ids.begin(), station_ids.end(), p)) continue;
        if (!circle.circle_contains(p, at)) continue;
        const PairHistory* h = histories.find(user, p);
        if (h && h->touched(from, at)) ++count;
    }
    return count;
}

ItemId Sim::store_match(const NodeState& node, const InterestName& interest) const {
    for (ItemId item : node.store) {
        if (matches(in.catalog->name(item), interest)) return item;
    }
    return kNoItem;
}

bool Sim::cellular_match(const NodeState& node, const InterestName& interest) const {
    for (ItemId item : node.cellular_store) {
        if (matches(in.catalog->name(item), interest)) return true;
    }
    return false;
}

void Sim::add_content(NodeState& node, ItemId item, Time at, bool cellular) {
    const DataName& name = in.catalog->name(item);
    node.log.add(at, item, name.sorted);
    if (cellular) node.cellular_store.insert(item);
    if (node.store.insert(item).second) {
        node.circle.add_content(name.sorted, cfg.kappa);
        if (scheme) scheme->store_gain(*this, node.id, item, at);
    }
}

void Sim::deliver(DataPacket& packet, Time at) {
    Request& r = request(packet.request);
    r.status = RequestStatus::delivered;
    r.delivered_at = at;
    r.data_hops = packet.hops;
    log.add(at, r.id, LogEvent::deliver, packet.custodian, packet.consumer,
            to_string(packet.phase), packet.hops);
    add_content(node(packet.consumer), packet.item, at, false);
}

DataPacket& Sim::satisfy(InterestPacket& packet, NodeId carrier, NodeId provider, Time at) {
    Request& r = request(packet.request);
    NodeState& prov = node(provider);
    ItemId item = store_match(prov, packet.name);
    // provider-side in-record plus the special reply entry carrying the
    // provider's centrality stamp
    PitEntry entry;
    entry.request = packet.request;
    entry.interest = packet.name;
    entry.consumer = packet.consumer;
    entry.created = packet.created;
    entry.ttl = packet.ttl;
    entry.centrality_stamp = centrality(provider, at);
    prov.pit[packet.request] = entry;

    log.add(at, r.id, LogEvent::satisfy, carrier, provider, to_string(packet.phase), packet.hops);
    r.interest_hops = packet.hops;

    DataPhase phase = initial_data_phase(prov.circle.nset_contains(packet.consumer, at),
                                         prov.circle.circle_contains(packet.consumer, at));
    if (provider == packet.consumer) phase = DataPhase::hold;  // degenerate self-service
    DataPacket data = provider_satisfy(entry, item, provider, phase);
    int id = packet.request;
    live_interests.erase(id);
    auto [it, ok] = live_data.emplace(id, std::move(data));
    return it->second;
}

// --- event loop --------------------------------------------------------

namespace {

// Event kinds in tie-break order: contact processing (where deliveries
// happen) before expiry before generation.
enum EvKind : int { kContactStart = 0, kContactEnd = 1, kExpiry = 2, kGeneration = 3 };

struct Ev {
    Time t = 0;
    int kind = 0;
    std::int64_t x = 0;  // pair low node / user / request id
    std::int64_t y = 0;  // pair high node / script index
};

struct EvLater {
    bool operator()(const Ev& a, const Ev& b) const {
        return std::tie(a.t, a.kind, a.x, a.y) > std::tie(b.t, b.kind, b.x, b.y);
    }
};

const PreferenceProfile* profile_for(const SimInputs& in, NodeId user) {
    if (!in.profiles) return nullptr;
    auto it = in.profiles->find(user);
    return it == in.profiles->end() ? nullptr : &it->second;
}

ItemId sample_item(Sim& sim, NodeState& user) {
    const Catalog& catalog = *sim.in.catalog;
    const PreferenceProfile* prof = profile_for(sim.in, user.id);
    std::vector<double> weights(catalog.size(), 1.0);
    if (prof) {
        for (std::size_t i = 0; i < catalog.size(); ++i) {
            double w = 1.0;
            for (ComponentId c : catalog.name(static_cast<ItemId>(i)).sorted) {
                auto it = prof->weights.find(c);
                w *= it == prof->weights.end() ? 0.0 : it->second;
            }
            weights[i] = w;
        }
    }
    return static_cast<ItemId>(user.request_rng.next_categorical(weights));
}

}  // namespace

SimResult run_simulation(const SimConfig& cfg, const SimInputs& in) {
    cfg.validate();
    if (!in.bundle || !in.catalog) throw ParseError("simulation inputs incomplete");
    if (in.bundle->horizon < cfg.warmup)
        throw ParseError("trace horizon shorter than the warm-up span");

    Sim sim(cfg, in);
    sim.scheme = make_scheme(cfg.scheme);

    for (NodeId id : in.bundle->nodes) {
        NodeState node;
        node.id = id;
        node.station = in.bundle->is_station(id);
        node.circle = NodeCircleState(id);
        node.request_rng = Rng(mix_seed(cfg.seed, 0x9e0de5, static_cast<std::uint64_t>(id)));
        if (cfg.scheme == SchemeId::stcr)
            node.synopsis = std::make_unique<ContentSynopsis>(cfg.synopsis_bits, cfg.synopsis_hashes);
        sim.nodes.emplace(id, std::move(node));
        if (in.bundle->is_station(id)) sim.station_ids.push_back(id);
    }
    std::sort(sim.station_ids.begin(), sim.station_ids.end());

    for (const auto& [node, item] : in.preloaded) sim.add_content(sim.node(node), item, 0, true);

    std::priority_queue<Ev, std::vector<Ev>, EvLater> queue;
    for (const auto& e : in.bundle->events) {
        queue.push(Ev{e.start, kContactStart, e.a, e.b});
        queue.push(Ev{e.end, kContactEnd, e.a, e.b});
    }
    if (in.scripted.empty()) {
        for (const auto& [id, node] : sim.nodes) {
            if (node.station) continue;
            for (Time t = cfg.request_interval; t < in.bundle->horizon; t += cfg.request_interval)
                queue.push(Ev{t, kGeneration, id, -1});
        }
    } else {
        for (std::size_t i = 0; i < in.scripted.size(); ++i)
            queue.push(Ev{in.scripted[i].at, kGeneration, in.scripted[i].consumer,
                          static_cast<std::int64_t>(i)});
    }

    auto handle_generation = [&](NodeId user, Time t, std::int64_t script_index) {
        NodeState& consumer = sim.node(user);
        Request r;
        r.consumer = user;
        r.created = t;
        if (script_index >= 0) {
            const auto& s = in.scripted[static_cast<std::size_t>(script_index)];
            r.interest = s.interest;
            auto found = in.catalog->find(r.interest.sorted);
            r.sampled_item = found ? *found : kNoItem;
        } else {
            ItemId item = sample_item(sim, consumer);
            InterestName interest = make_interest(in.catalog->name(item).sorted);
            if (sim.cellular_match(consumer, interest)) {
                item = sample_item(sim, consumer);  // resample once
                interest = make_interest(in.catalog->name(item).sorted);
                if (sim.cellular_match(consumer, interest)) {
                    ++sim.skipped;
                    return;
                }
            }
            r.sampled_item = item;
            r.interest = std::move(interest);
        }

        r.id = static_cast<int>(sim.requests.size());
        if (script_index < 0 && t < cfg.warmup) {
            // warm-up: cellular service with probability 1 at the next base
            // station contact inside the warm-up TTL
            r.status = RequestStatus::warmup_pending;
            sim.requests.push_back(r);
            queue.push(Ev{t + cfg.warmup_ttl, kExpiry, r.id, -1});
            if (sim.in_station_contact(user, t)) {
                sim.request(r.id).status = RequestStatus::warmup_served;
                sim.add_content(consumer, r.sampled_item, t, true);
            } else {
                consumer.awaiting_warmup.push_back(r.id);
            }
            return;
        }
        if (script_index < 0 && sim.in_station_contact(user, t) &&
            consumer.request_rng.next_double() < cfg.direct_serve_prob) {
            r.status = RequestStatus::direct_served;
            sim.requests.push_back(r);
            sim.add_content(consumer, r.sampled_item, t, true);
            return;
        }
        r.status = RequestStatus::pending;
        sim.requests.push_back(r);
        Request& stored = sim.request(r.id);
        queue.push(Ev{t + cfg.ttl, kExpiry, r.id, -1});
        sim.scheme->inject(sim, stored, t);
        if (stored.status == RequestStatus::pending) sim.scheme->creation_logic(sim, stored, t);
    };

    auto handle_contact_start = [&](NodeId a, NodeId b, Time t) {
        sim.histories.begin_contact(a, b, t);
        NodeState& na = sim.node(a);
        NodeState& nb = sim.node(b);
        if (na.station || nb.station) {
            // base stations only provide cellular service
            NodeState& user = na.station ? nb : na;
            if (!user.station && !user.awaiting_warmup.empty()) {
                for (int id : user.awaiting_warmup) {
                    Request& r = sim.request(id);
                    if (r.status != RequestStatus::warmup_pending) continue;
                    r.status = RequestStatus::warmup_served;
                    sim.add_content(user, r.sampled_item, t, true);
                }
                user.awaiting_warmup.clear();
            }
            return;
        }
        na.circle.advance(t, cfg.kappa);
        nb.circle.advance(t, cfg.kappa);
        on_encounter(na.circle, nb.circle, na.log, nb.log, sim.histories.find(a, b), t,
                     cfg.params, cfg.kappa);
        if (cfg.scheme == SchemeId::sndn) {
            na.fib.update_on_encounter(b, nb.circle.circle_name(), t);
            nb.fib.update_on_encounter(a, na.circle.circle_name(), t);
        }
        sim.scheme->exchange_state(sim, a, b, t);
        if (t >= cfg.warmup || !in.scripted.empty()) sim.scheme->pair_logic(sim, a, b, t);
    };

    auto handle_expiry = [&](int request_id, Time t) {
        Request& r = sim.request(request_id);
        if (r.status == RequestStatus::warmup_pending) {
            r.status = RequestStatus::warmup_expired;
            return;
        }
        if (r.status != RequestStatus::pending) return;
        sim.scheme->expire_packets(sim, r, t);
        r.status = RequestStatus::expired;
    };

    while (!queue.empty()) {
        Ev ev = queue.top();
        queue.pop();
        if (ev.t > in.bundle->horizon) break;
        switch (ev.kind) {
            case kContactStart:
                handle_contact_start(static_cast<NodeId>(ev.x), static_cast<NodeId>(ev.y), ev.t);
                break;
            case kContactEnd:
                sim.histories.end_contact(static_cast<NodeId>(ev.x), static_cast<NodeId>(ev.y), ev.t);
                break;
            case kExpiry:
                handle_expiry(static_cast<int>(ev.x), ev.t);
                break;
            case kGeneration:
                handle_generation(static_cast<NodeId>(ev.x), ev.t, ev.y);
                break;
        }
    }

    SimResult result;
    result.metrics = compute_metrics(sim.requests);
    result.metrics.skipped = sim.skipped;
    result.metrics.seed = cfg.seed;
    result.metrics.trace_hash = trace_input_hash(in);
    result.requests = std::move(sim.requests);
    result.log = std::move(sim.log);
    return result;
}

}  // namespace sndn
