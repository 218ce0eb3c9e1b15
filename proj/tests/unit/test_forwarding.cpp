#include <doctest.h>

#include "oracles.hpp"
#include "sndn/forwarding.hpp"

using namespace sndn;

TEST_CASE("fib counts start from the own circle name") {
    FibTable fib;
    std::vector<ComponentId> own{0};
    CHECK(fib.count(0, 100, 3600, own) == 1);
    CHECK(fib.count(1, 100, 3600, own) == 0);
}

TEST_CASE("fib merges peer circle names with increment semantics") {
    FibTable fib;
    std::vector<ComponentId> own{0};
    fib.update_on_encounter(7, {0, 1}, 50);
    CHECK(fib.count(0, 100, 3600, own) == 2);
    CHECK(fib.count(1, 100, 3600, own) == 1);
    // the same peer met twice stays one contributor
    fib.update_on_encounter(7, {0, 1}, 80);
    CHECK(fib.count(0, 100, 3600, own) == 2);
    CHECK(fib.count(1, 100, 3600, own) == 1);
    // contributors age out of the window
    CHECK(fib.count(0, 80 + 3601, 3600, own) == 1);
}

TEST_CASE("data directionality is the minimum count with absent = 0") {
    FibTable fib;
    std::vector<ComponentId> own;
    fib.update_on_encounter(1, {0}, 10);
    fib.update_on_encounter(2, {0}, 10);
    fib.update_on_encounter(3, {0, 1}, 10);
    fib.update_on_encounter(4, {1, 2}, 10);
    fib.update_on_encounter(5, {1, 2, 3}, 10);
    fib.update_on_encounter(6, {1, 2}, 10);
    fib.update_on_encounter(7, {1, 2}, 10);
    // counts: 0 -> 3, 1 -> 5, 2 -> 4, 3 -> 1
    CHECK(fib.directionality(make_interest({0, 1}), 20, 3600, own) == 3);
    CHECK(fib.directionality(make_interest({0, 9}), 20, 3600, own) == 0);
    CHECK(FibTable{}.directionality(make_interest({0}), 20, 3600, own) == 0);

    // oracle agreement and monotonicity under component addition
    std::map<std::uint32_t, long> counts{{0, 3}, {1, 5}, {2, 4}, {3, 1}};
    for (int mask = 1; mask < 32; ++mask) {
        std::vector<ComponentId> comps;
        for (int i = 0; i < 5; ++i)
            if (mask & (1 << i)) comps.push_back(static_cast<ComponentId>(i));
        InterestName interest = make_interest(comps);
        long got = fib.directionality(interest, 20, 3600, own);
        CHECK(got == oracle::min_count(counts, interest.sorted));
        std::vector<ComponentId> more = comps;
        more.push_back(3);
        CHECK(fib.directionality(make_interest(more), 20, 3600, own) <= got);
    }
}

TEST_CASE("data location mirrors the metric over the neighbour component map") {
    ComponentCountMap ncm{{0, 13}, {1, 4}};
    CHECK(data_location(ncm, make_interest({0, 1})) == 4);
    CHECK(data_location(ncm, make_interest({0})) == 13);
    CHECK(data_location(ncm, make_interest({0, 2})) == 0);
    CHECK(data_location({}, make_interest({0})) == 0);
}

TEST_CASE("interest decisions: satisfaction wins over everything") {
    InterestView carrier{5, 5, true, false};
    InterestView peer{0, 0, false, true};
    auto d = interest_forward_decision(carrier, peer, InterestPhase::macro);
    CHECK(d.action == InterestAction::satisfy);
}

TEST_CASE("interest decisions: macro ascends directionality with keep-on-tie") {
    InterestView carrier{2, 0, false, false};
    InterestView equal{2, 9, false, false};
    CHECK(interest_forward_decision(carrier, equal, InterestPhase::macro).action ==
          InterestAction::keep);
    InterestView higher{3, 0, false, false};
    auto d = interest_forward_decision(carrier, higher, InterestPhase::macro);
    CHECK(d.action == InterestAction::transfer);
    CHECK(d.phase == InterestPhase::macro);
}

TEST_CASE("interest decisions: a covering peer upgrades macro to micro") {
    InterestView carrier{0, 0, false, false};  // dead end: U_I = 0
    InterestView covering{0, 2, true, false};
    auto d = interest_forward_decision(carrier, covering, InterestPhase::macro);
    CHECK(d.action == InterestAction::transfer);
    CHECK(d.phase == InterestPhase::micro);
}

TEST_CASE("interest decisions: micro ascends data location or recovers coverage") {
    InterestView carrier{0, 3, true, false};
    InterestView lower{0, 3, true, false};
    CHECK(interest_forward_decision(carrier, lower, InterestPhase::micro).action ==
          InterestAction::keep);
    InterestView higher{0, 4, false, false};
    CHECK(interest_forward_decision(carrier, higher, InterestPhase::micro).action ==
          InterestAction::transfer);
    // the carrier lost coverage (renamed circle): jump to a covering peer
    InterestView uncovered{0, 3, false, false};
    InterestView covering{0, 1, true, false};
    CHECK(interest_forward_decision(uncovered, covering, InterestPhase::micro).action ==
          InterestAction::transfer);
    CHECK(interest_forward_decision(uncovered, lower, InterestPhase::micro).action ==
          InterestAction::keep);
}

TEST_CASE("data decisions: deliver, tighten, ascend") {
    DataView consumer{true, false, false, 0};
    CHECK(data_forward_decision(9, consumer, DataPhase::centrality).action == DataAction::deliver);
    CHECK(data_forward_decision(9, consumer, DataPhase::hold).action == DataAction::deliver);

    DataView holder{false, true, false, 0};
    auto d = data_forward_decision(9, holder, DataPhase::centrality);
    CHECK(d.action == DataAction::transfer);
    CHECK(d.phase == DataPhase::hold);

    DataView circle_member{false, false, true, 0};
    d = data_forward_decision(9, circle_member, DataPhase::centrality);
    CHECK(d.action == DataAction::transfer);
    CHECK(d.phase == DataPhase::circle);

    DataView central{false, false, false, 7};
    d = data_forward_decision(5, central, DataPhase::centrality);
    CHECK(d.action == DataAction::transfer);
    CHECK(d.phase == DataPhase::centrality);
    CHECK(data_forward_decision(7, central, DataPhase::centrality).action == DataAction::keep);
}

TEST_CASE("data decisions never regress the phase") {
    // circle phase ignores centrality and circle membership; only the
    // neighbour set tightens further
    DataView central{false, false, true, 100};
    CHECK(data_forward_decision(0, central, DataPhase::circle).action == DataAction::keep);
    DataView holder{false, true, true, 0};
    auto d = data_forward_decision(0, holder, DataPhase::circle);
    CHECK(d.action == DataAction::transfer);
    CHECK(d.phase == DataPhase::hold);
    // hold keeps until the consumer shows up
    CHECK(data_forward_decision(0, holder, DataPhase::hold).action == DataAction::keep);
    CHECK(data_forward_decision(0, central, DataPhase::hold).action == DataAction::keep);
}

TEST_CASE("provider satisfy copies the consumer identity from the in-record") {
    PitEntry entry;
    entry.request = 12;
    entry.interest = make_interest({1, 2});
    entry.consumer = 33;
    entry.created = 500;
    entry.ttl = 7200;
    entry.centrality_stamp = 4;
    DataPacket data = provider_satisfy(entry, 9, 44, DataPhase::centrality);
    CHECK(data.consumer == 33);
    CHECK(data.request == 12);
    CHECK(data.item == 9);
    CHECK(data.custodian == 44);
    CHECK(data.hops == 0);
    CHECK(data.interest_created == 500);
}

TEST_CASE("initial data phase reflects the provider's relation to the consumer") {
    CHECK(initial_data_phase(true, true) == DataPhase::hold);
    CHECK(initial_data_phase(false, true) == DataPhase::circle);
    CHECK(initial_data_phase(false, false) == DataPhase::centrality);
}
