#include <doctest.h>

#include "../common/audits.hpp"
#include "../common/fixtures.hpp"
#include "sndn/engine.hpp"

using namespace sndn;
using fixtures::Scenario;
using fixtures::scripted;
using fixtures::scripted_config;

namespace {

int count_events(const EventLog& log, LogEvent kind) {
    int n = 0;
    for (const auto& r : log.rows)
        if (r.event == kind) ++n;
    return n;
}

}  // namespace

TEST_CASE("flood: 3-node chain delivers over the reverse flood") {
    // A-B in contact over [1,5]; B-C over [2,3]; C holds the data.
    // Interest floods A->B (t=1), B->C (t=2, satisfied), and the reply
    // rides the still-active contacts C->B->A at t=2.
    Scenario s = scripted({{0, 1, 1, 5}, {1, 2, 2, 3}}, {}, "a/b\n");
    s.inputs.preloaded = {{2, 0}};
    s.inputs.scripted = {{0, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::flood);
    SimResult r = run_simulation(cfg, *s.prepared());
    REQUIRE(r.requests.size() == 1);
    const Request& req = r.requests[0];
    CHECK(req.status == RequestStatus::delivered);
    CHECK(req.delivered_at == 2);
    CHECK(req.interest_hops == 2);  // A->B, B->C
    CHECK(req.data_hops == 1);      // C->B; B->A is the delivery
    CHECK(count_events(r.log, LogEvent::satisfy) == 1);
    CHECK(count_events(r.log, LogEvent::deliver) == 1);
    auto hm = audits::hops_match_transfers(r.log.rows, r.requests);
    INFO(hm.error);
    CHECK(hm.ok);
}

TEST_CASE("flood: no contact path within the ttl leaves the request undelivered") {
    Scenario s = scripted({{0, 1, 10, 20}, {2, 3, 30, 40}}, {}, "a/b\n");
    s.inputs.preloaded = {{3, 0}};  // provider unreachable from {0,1}
    s.inputs.scripted = {{0, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::flood, /*ttl=*/1000);
    SimResult r = run_simulation(cfg, *s.prepared());
    CHECK(r.requests[0].status == RequestStatus::expired);
    // every flooded copy was dropped at expiry: 2 interest holders
    CHECK(count_events(r.log, LogEvent::drop) == 2);
}

TEST_CASE("flood: provider as first contact delivers at the contact time") {
    Scenario s = scripted({{0, 1, 50, 60}}, {}, "a/b\n");
    s.inputs.preloaded = {{1, 0}};
    s.inputs.scripted = {{5, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::flood);
    SimResult r = run_simulation(cfg, *s.prepared());
    CHECK(r.requests[0].status == RequestStatus::delivered);
    CHECK(r.requests[0].delivered_at == 50);
}

TEST_CASE("direct: satisfied only on a provider contact, data in the same contact") {
    Scenario s = scripted({{0, 1, 100, 110}, {0, 2, 200, 210}}, {}, "a/b\n");
    s.inputs.preloaded = {{2, 0}};
    s.inputs.scripted = {{10, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::direct);
    SimResult r = run_simulation(cfg, *s.prepared());
    const Request& req = r.requests[0];
    CHECK(req.status == RequestStatus::delivered);
    CHECK(req.delivered_at == 200);  // node 1 is not a provider
    CHECK(req.interest_hops == 0);
    CHECK(req.data_hops == 0);
    CHECK(count_events(r.log, LogEvent::transfer) == 0);
}

TEST_CASE("direct: consumer never meeting a provider expires") {
    Scenario s = scripted({{0, 1, 100, 110}}, {}, "a/b\n");
    s.inputs.preloaded = {{2, 0}};
    s.bundle.nodes.insert(2);
    s.inputs.scripted = {{10, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::direct, /*ttl=*/500);
    SimResult r = run_simulation(cfg, *s.prepared());
    CHECK(r.requests[0].status == RequestStatus::expired);
}

TEST_CASE("direct: stores obtained as a consumer count, custody does not") {
    // node 1 obtains the item as a consumer first, then serves node 0
    Scenario s = scripted({{1, 2, 100, 110}, {0, 1, 200, 210}}, {}, "a/b\n");
    s.inputs.preloaded = {{2, 0}};
    s.inputs.scripted = {{10, 1, make_interest(s.catalog.name(0).sorted)},
                         {150, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::direct);
    SimResult r = run_simulation(cfg, *s.prepared());
    CHECK(r.requests[0].status == RequestStatus::delivered);  // node 1 via provider 2
    CHECK(r.requests[1].status == RequestStatus::delivered);  // node 0 via node 1's store
    CHECK(r.requests[1].delivered_at == 200);
}

TEST_CASE("fc_bubblerap: global centrality ascent with keep-on-tie") {
    // node 2 has strictly higher windowed degree than consumer 0
    std::vector<ContactEvent> events{
        {2, 3, 10, 20}, {2, 4, 30, 40}, {2, 5, 50, 60},  // degree(2) = 3
        {0, 1, 70, 80},                                  // degree(0) = 1, degree(1) >= 1
        {0, 2, 100, 110},                                // ascent happens here
        {2, 6, 200, 210},                                // relay hits the provider
        {0, 2, 300, 310},                                // reply comes home
    };
    Scenario s = scripted(events, {}, "a/b\n");
    s.inputs.preloaded = {{6, 0}};
    s.inputs.scripted = {{90, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::fc_bubblerap);
    SimResult r = run_simulation(cfg, *s.prepared());
    const Request& req = r.requests[0];
    CHECK(req.status == RequestStatus::delivered);  // 0 -> 2 -> provider 6 -> back
    CHECK(req.delivered_at == 300);
    CHECK(req.interest_hops == 1);
    CHECK(req.data_hops == 1);

    // tie in global centrality: keep
    Scenario tie = scripted({{0, 2, 10, 20}, {1, 3, 10, 20}, {0, 1, 100, 110}}, {}, "a/b\n");
    tie.inputs.preloaded = {{3, 0}};
    tie.inputs.scripted = {{50, 0, make_interest(tie.catalog.name(0).sorted)}};
    SimResult rt = run_simulation(scripted_config(SchemeId::fc_bubblerap, 300), *tie.prepared());
    CHECK(rt.requests[0].status == RequestStatus::expired);
    CHECK(count_events(rt.log, LogEvent::transfer) == 0);
}

TEST_CASE("stcr: advertisement, binding and centrality routing deliver") {
    // R(1) builds centrality; provider P(0) advertises to R; consumer C(2)
    // binds through R's synopsis, the bound interest rides to P, and the
    // reply comes back through R.
    std::vector<ContactEvent> events{
        {1, 3, 10, 20},    // R meets helper X
        {0, 1, 100, 110},  // P (lower centrality) advertises into R's synopsis
        {1, 2, 200, 210},  // C queries R: hit -> bind P; bound interest moves to R
        {0, 1, 300, 310},  // R reaches P: satisfied; data hops back to R
        {1, 2, 400, 410},  // R meets the consumer: delivered
    };
    Scenario s = scripted(events, {}, "a/b\nc/d\n");
    s.inputs.preloaded = {{0, 0}};
    s.inputs.scripted = {{150, 2, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::stcr);
    SimResult r = run_simulation(cfg, *s.prepared());
    const Request& req = r.requests[0];
    CHECK(req.status == RequestStatus::delivered);
    CHECK(req.delivered_at == 400);
    CHECK(req.interest_hops == 1);  // C -> R while bound
    CHECK(req.data_hops == 1);      // P -> R
    auto audit = audits::single_copy_audit(r.log.rows);
    INFO(audit.error);
    CHECK(audit.ok);
}

TEST_CASE("stcr: nothing advertised means no binding and no delivery") {
    Scenario s = scripted({{1, 2, 200, 210}, {0, 3, 300, 310}}, {}, "a/b\n");
    s.inputs.preloaded = {{0, 0}};
    s.inputs.scripted = {{150, 2, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::stcr, /*ttl=*/1000);
    SimResult r = run_simulation(cfg, *s.prepared());
    CHECK(r.requests[0].status == RequestStatus::expired);
    CHECK(count_events(r.log, LogEvent::transfer) == 0);
}

TEST_CASE("stcr: a forced false positive unbinds and the request stays live") {
    // a tiny filter makes every query hit; the index misses, so the binding
    // falls back to the synopsis owner and unbinds on the spot
    std::vector<ContactEvent> events{
        {1, 3, 10, 20},    // R gains centrality
        {0, 1, 100, 110},  // P advertises unrelated names into R's synopsis
        {1, 2, 200, 210},  // C queries for a never-advertised name: false positive
    };
    Scenario s = scripted(events, {}, "a/b\nc/d\ne/f\ng/h\ni/j\n");
    s.inputs.preloaded = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};  // saturate the 2-bit filter
    s.inputs.scripted = {{150, 2, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::stcr, /*ttl=*/10000);
    cfg.synopsis_bits = 2;
    cfg.synopsis_hashes = 1;
    SimResult r = run_simulation(cfg, *s.prepared());
    // bound to the owner R, unbound at the same contact, never transferred
    CHECK(r.requests[0].status == RequestStatus::expired);
    CHECK(count_events(r.log, LogEvent::transfer) == 0);
}

TEST_CASE("link budget caps custody transfers per contact event") {
    // two pending interests at node 0 both want to move to the stronger
    // node 2; with budget 1 only the older request moves per contact
    std::vector<ContactEvent> events{
        {2, 3, 10, 20}, {2, 4, 30, 40},  // degree(2) = 2
        {0, 2, 100, 110},
        {0, 2, 200, 210},
    };
    Scenario s = scripted(events, {}, "a/b\nc/d\n");
    s.inputs.scripted = {{50, 0, make_interest(s.catalog.name(0).sorted)},
                         {60, 0, make_interest(s.catalog.name(1).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::fc_bubblerap, /*ttl=*/5000);
    cfg.link_budget = 1;
    SimResult r = run_simulation(cfg, *s.prepared());
    std::map<Time, int> transfers_at;
    for (const auto& row : r.log.rows)
        if (row.event == LogEvent::transfer) ++transfers_at[row.time];
    for (auto& [t, n] : transfers_at) CHECK(n <= 1);
    CHECK(transfers_at[100] == 1);
    CHECK(transfers_at[200] == 1);  // the second request catches up
}

TEST_CASE("sndn: a provider contact satisfies on first touch") {
    std::vector<ContactEvent> events;
    // 3 and 4 meet repeatedly with long contacts: high W_p
    for (int k = 0; k < 12; ++k)
        events.push_back({3, 4, 1000 * k, 1000 * k + 900});
    events.push_back({0, 3, 15000, 15060});  // consumer meets the circle
    Scenario s = scripted(events, {}, "a/b\na/c\n");
    // both community members hold a-heavy content: component a becomes key
    s.inputs.preloaded = {{3, 0}, {3, 1}, {4, 0}, {4, 1}};
    s.inputs.scripted = {{14000, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::sndn);
    cfg.params.window = 36000;
    SimResult r = run_simulation(cfg, *s.prepared());
    const Request& req = r.requests[0];
    CHECK(req.status == RequestStatus::delivered);  // satisfied directly at 3
    CHECK(req.delivered_at == 15000);
    auto audit = audits::single_copy_audit(r.log.rows);
    CHECK(audit.ok);
    auto phases = audits::interest_phase_monotonic(r.log.rows);
    CHECK(phases.ok);
}

TEST_CASE("sndn: macro dead end transfers to a covering peer and goes micro") {
    // relay 1 has an empty fib for the interest (U_I = 0) but peer 3's circle
    // name covers it; the decision must transfer and flip to micro
    std::vector<ContactEvent> events;
    for (int k = 0; k < 12; ++k) events.push_back({3, 4, 1000 * k, 1000 * k + 900});
    events.push_back({0, 3, 15000, 15060});
    Scenario s = scripted(events, {}, "a/b\na/c\nb/z\n");
    // both circle members hold a- and b-flavoured content but not a/b itself
    s.inputs.preloaded = {{3, 1}, {3, 2}, {4, 1}, {4, 2}};
    s.inputs.scripted = {{14000, 0, make_interest(s.catalog.name(0).sorted)}};
    SimConfig cfg = scripted_config(SchemeId::sndn);
    SimResult r = run_simulation(cfg, *s.prepared());
    const Request& req = r.requests[0];
    // a/b is not stored anywhere; the interest moves into the covering
    // circle (micro) but can never be satisfied
    CHECK(req.status == RequestStatus::expired);
    bool transferred_micro = false;
    for (const auto& row : r.log.rows)
        if (row.event == LogEvent::transfer && row.phase == "micro" && row.request == req.id)
            transferred_micro = true;
    CHECK(transferred_micro);
}
