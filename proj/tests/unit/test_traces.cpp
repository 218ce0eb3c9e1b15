#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sndn/traces.hpp"

using namespace sndn;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("sndn_traces_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

}  // namespace

TEST_CASE("contact loading merges symmetric duplicates and overlaps") {
    TempDir dir;
    auto path = dir.file("contacts.csv", "1,2,10,20\n2,1,15,30\n");
    auto events = load_contact_events(path);
    REQUIRE(events.size() == 1);
    CHECK(events[0] == ContactEvent{1, 2, 10, 30});
}

TEST_CASE("contact loading keeps well-formed rows sorted") {
    TempDir dir;
    auto path = dir.file("contacts.csv", "a,b,start,end\n5,4,100,120\n1,2,10,20\n2,3,40,50\n");
    auto events = load_contact_events(path);
    REQUIRE(events.size() == 3);
    CHECK(events[0] == ContactEvent{1, 2, 10, 20});
    CHECK(events[1] == ContactEvent{2, 3, 40, 50});
    CHECK(events[2] == ContactEvent{4, 5, 100, 120});
}

TEST_CASE("contact loading errors carry the line number") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(load_contact_events(dir.file("bad.csv", "1,2,10,20\n1,2,oops,30\n")),
                         doctest::Contains(":2"), ParseError);
    CHECK_THROWS_WITH_AS(load_contact_events(dir.file("rev.csv", "1,2,30,30\n")),
                         doctest::Contains("start >= end"), ParseError);
    CHECK_THROWS_WITH_AS(load_contact_events(dir.file("empty.csv", "")),
                         doctest::Contains("no events"), ParseError);
    CHECK_THROWS_WITH_AS(load_contact_events(dir.file("hdr.csv", "a,b,start,end\n")),
                         doctest::Contains("no events"), ParseError);
}

TEST_CASE("station list must reference trace nodes") {
    TempDir dir;
    dir.file("contacts.csv", "1,2,10,20\n");
    dir.file("stations.txt", "2\n");
    TraceBundle bundle = load_trace_dir(dir.path.string());
    CHECK(bundle.is_station(2));
    CHECK(bundle.horizon == 20);
    dir.file("stations.txt", "7\n");
    CHECK_THROWS_WITH_AS(load_trace_dir(dir.path.string()),
                         doctest::Contains("unknown node 7"), ParseError);
}

TEST_CASE("normalized pair timelines are strictly increasing and disjoint") {
    Rng rng(99);
    std::vector<ContactEvent> raw;
    for (int i = 0; i < 200; ++i) {
        NodeId a = static_cast<NodeId>(rng.next_below(6));
        NodeId b = static_cast<NodeId>(rng.next_below(6));
        if (a == b) continue;
        Time s = static_cast<Time>(rng.next_below(500));
        raw.push_back(ContactEvent{a, b, s, s + 1 + static_cast<Time>(rng.next_below(50))});
    }
    auto events = normalize_events(raw);
    std::map<std::pair<NodeId, NodeId>, Time> last_end;
    for (const auto& e : events) {
        CHECK(e.a < e.b);
        CHECK(e.start < e.end);
        auto key = std::make_pair(e.a, e.b);
        if (last_end.count(key)) CHECK(e.start > last_end[key]);
        last_end[key] = e.end;
    }
}

TEST_CASE("profiles normalize, default to uniform and validate") {
    Catalog cat = parse_catalog("a/b\nc/d\n", "test");
    std::set<NodeId> users{1, 7};
    auto profiles = parse_profiles("1,a,2\n1,b,2\n", "p", cat, users);
    CHECK(profiles[1].weights[*cat.components().lookup("a")] == doctest::Approx(0.5));
    CHECK(profiles[1].weights[*cat.components().lookup("b")] == doctest::Approx(0.5));
    // user 7 has no rows: uniform over the 4-component namespace
    CHECK(profiles[7].weights.size() == 4);
    CHECK(profiles[7].weights[0] == doctest::Approx(0.25));

    auto scaled = parse_profiles("1,a,1\n1,d,3\n", "p", cat, users);
    CHECK(scaled[1].weights[*cat.components().lookup("a")] == doctest::Approx(0.25));
    CHECK(scaled[1].weights[*cat.components().lookup("d")] == doctest::Approx(0.75));

    CHECK_THROWS_WITH_AS(parse_profiles("1,a,-1\n", "p", cat, users),
                         doctest::Contains("negative weight"), ParseError);
    CHECK_THROWS_WITH_AS(parse_profiles("1,zzz,1\n", "p", cat, users),
                         doctest::Contains("unknown component"), ParseError);
    for (auto& [user, p] : parse_profiles("1,a,5\n1,c,15\n", "p", cat, users)) {
        double total = 0;
        for (auto& [c, w] : p.weights) total += w;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("synthetic generation is deterministic and seed-sensitive") {
    SyntheticSpec spec;
    spec.n_users = 10;
    spec.horizon = 7200;
    spec.seed = 42;
    SyntheticTrace a = generate_synthetic_trace(spec);
    SyntheticTrace b = generate_synthetic_trace(spec);
    CHECK(a.bundle.events == b.bundle.events);
    CHECK(a.profiles.size() == b.profiles.size());
    for (auto& [u, p] : a.profiles) CHECK(p.weights == b.profiles[u].weights);
    spec.seed = 43;
    SyntheticTrace c = generate_synthetic_trace(spec);
    CHECK(a.bundle.events != c.bundle.events);
}

TEST_CASE("equal rates make community labels irrelevant to contacts") {
    SyntheticSpec spec;
    spec.n_users = 12;
    spec.horizon = 7200;
    spec.intra_rate = 1.0;
    spec.inter_rate = 1.0;
    spec.seed = 5;
    spec.n_communities = 1;
    auto one = generate_synthetic_trace(spec);
    spec.n_communities = 4;
    auto four = generate_synthetic_trace(spec);
    CHECK(one.bundle.events == four.bundle.events);
}

TEST_CASE("intra/inter contact count ratio tracks the rate ratio") {
    // Monte-Carlo oracle over the generator: with a 10x rate ratio and short
    // durations, mean per-pair intra counts are ~10x inter counts.
    SyntheticSpec spec;
    spec.n_users = 20;
    spec.n_communities = 2;
    spec.intra_rate = 1.0;
    spec.inter_rate = 0.1;
    spec.mean_duration = 10;
    spec.horizon = 24 * 3600;
    spec.n_base_stations = 0;
    double intra_sum = 0, inter_sum = 0, intra_sq = 0, inter_sq = 0;
    int intra_pairs = 0, inter_pairs = 0;
    const int seeds = 30;
    for (int s = 0; s < seeds; ++s) {
        spec.seed = 1000 + s;
        auto trace = generate_synthetic_trace(spec);
        std::map<std::pair<NodeId, NodeId>, int> counts;
        for (const auto& e : trace.bundle.events) ++counts[{e.a, e.b}];
        for (NodeId a = 0; a < spec.n_users; ++a) {
            for (NodeId b = a + 1; b < spec.n_users; ++b) {
                int ca = community_of(a, spec.n_users, 2, 0);
                int cb = community_of(b, spec.n_users, 2, 0);
                double n = counts.count({a, b}) ? counts[{a, b}] : 0;
                if (ca == cb) {
                    intra_sum += n;
                    intra_sq += n * n;
                    ++intra_pairs;
                } else {
                    inter_sum += n;
                    inter_sq += n * n;
                    ++inter_pairs;
                }
            }
        }
    }
    double mean_intra = intra_sum / intra_pairs;
    double mean_inter = inter_sum / inter_pairs;
    double var_intra = intra_sq / intra_pairs - mean_intra * mean_intra;
    double var_inter = inter_sq / inter_pairs - mean_inter * mean_inter;
    // delta-method standard error of mean_intra - 10 * mean_inter
    double se = std::sqrt(var_intra / intra_pairs + 100.0 * var_inter / inter_pairs);
    CHECK(std::abs(mean_intra - 10.0 * mean_inter) < 3.0 * se + 1e-9);
}

TEST_CASE("synthetic bundles round-trip through the csv files") {
    TempDir dir;
    SyntheticSpec spec;
    spec.n_users = 8;
    spec.horizon = 3600;
    spec.seed = 11;
    auto trace = generate_synthetic_trace(spec);
    save_contacts(trace.bundle.events, (dir.path / "contacts.csv").string());
    save_stations(trace.bundle.base_stations, (dir.path / "stations.txt").string());
    save_profiles(trace.profiles, trace.catalog, (dir.path / "profiles.csv").string());
    save_catalog(trace.catalog, (dir.path / "catalog.txt").string());

    TraceBundle bundle = load_trace_dir(dir.path.string());
    CHECK(bundle.events == trace.bundle.events);
    CHECK(bundle.base_stations == trace.bundle.base_stations);
    Catalog catalog = load_catalog((dir.path / "catalog.txt").string());
    REQUIRE(catalog.size() == trace.catalog.size());
    std::set<NodeId> users;
    for (NodeId n = 0; n < spec.n_users; ++n) users.insert(n);
    ProfileMap profiles = load_profiles((dir.path / "profiles.csv").string(), catalog, users);
    for (auto& [u, p] : trace.profiles) {
        for (auto& [c, w] : p.weights)
            CHECK(profiles[u].weights[c] == doctest::Approx(w).epsilon(1e-6));
    }
}
