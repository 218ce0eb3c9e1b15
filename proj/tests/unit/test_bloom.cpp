#include <doctest.h>

#include "sndn/bloom.hpp"

using namespace sndn;

TEST_CASE("bloom filter never reports an inserted key absent") {
    BloomFilter filter(4096, 3);
    Rng rng(505);
    std::vector<std::uint64_t> keys;
    for (int i = 0; i < 200; ++i) keys.push_back(rng.next_u64());
    for (auto k : keys) filter.insert(k);
    for (auto k : keys) CHECK(filter.may_contain(k));
}

TEST_CASE("bloom filter false-positive rate stays near the analytic bound") {
    for (std::size_t n : {50u, 100u, 200u}) {
        BloomFilter filter(4096, 3);
        Rng rng(1000 + n);
        for (std::size_t i = 0; i < n; ++i) filter.insert(rng.next_u64());
        int fp = 0;
        const int trials = 20000;
        for (int i = 0; i < trials; ++i) {
            // fresh draws collide with inserted keys with probability ~2^-64
            if (filter.may_contain(rng.next_u64())) ++fp;
        }
        double measured = static_cast<double>(fp) / trials;
        double bound = BloomFilter::analytic_fp_rate(4096, 3, n);
        CHECK(measured <= 2.0 * bound + 1e-3);
    }
}

TEST_CASE("synopsis answers live advertisements exactly") {
    ContentSynopsis synopsis(4096, 3);
    std::vector<ComponentId> name{1, 5};
    synopsis.advertise(name, 9, 100);
    auto hit = synopsis.query(name, 200, 3600, 77);
    REQUIRE(hit.has_value());
    CHECK(*hit == 9);
}

TEST_CASE("synopsis entries expire after the window and the filter rebuilds") {
    ContentSynopsis synopsis(64, 2);  // tiny filter: rebuilds must clear residue
    for (ComponentId c = 0; c < 24; ++c) synopsis.advertise({c, c + 100}, 3, 100);
    CHECK(synopsis.live_entries(200, 3600) == 24);
    CHECK(synopsis.live_entries(100 + 3601, 3600) == 0);
    // after the rebuild the filter is empty again: no stale hits
    int hits = 0;
    for (ComponentId c = 0; c < 24; ++c)
        if (synopsis.query({c, c + 100}, 100 + 3601, 3600, 77)) ++hits;
    CHECK(hits == 0);
}

TEST_CASE("a false positive binds to the synopsis owner") {
    ContentSynopsis synopsis(2, 1);  // 2 bits: collisions guaranteed quickly
    for (ComponentId c = 0; c < 16; ++c) synopsis.advertise({c, c + 50}, 5, 10);
    // both filter bits are set by now; query a name never advertised
    auto hit = synopsis.query({200, 201}, 20, 3600, 42);
    REQUIRE(hit.has_value());
    CHECK(*hit == 42);  // falls back to the claiming owner
}
