#include <doctest.h>

#include <sstream>

#include "hyperlet/counting.hpp"
#include "hyperlet/synthetic.hpp"
#include "oracles.hpp"

using namespace hyperlet;

TEST_SUITE("counting") {

TEST_CASE("isolated vertex counts exactly itself") {
    auto g = parse_hypergraph(std::string("v a A\n"));
    auto fv = count_hypergraphlets(g, "a", 4);
    REQUIRE(fv.entries.size() == 1);
    CHECK(fv.entries.begin()->first.order() == 1);
    CHECK(fv.entries.begin()->second == 1.0);
}

TEST_CASE("single edge rooted at an endpoint") {
    auto g = parse_hypergraph(std::string("v u A\nv v A\ne e1 X u v\n"));
    auto fv = count_hypergraphlets(g, "u", 2);
    CHECK(fv.entries.size() == 2);
    CHECK(fv.order_total(1) == 1.0);
    CHECK(fv.order_total(2) == 1.0);
}

TEST_CASE("triangle rooted counts") {
    auto g = parse_hypergraph(std::string("v r A\nv a A\nv b A\ne p X r a\ne q X r b\ne s X a b\n"));
    auto fv = count_hypergraphlets(g, "r", 3);
    CHECK(fv.order_total(1) == 1.0);
    CHECK(fv.order_total(2) == 2.0);
    CHECK(fv.order_total(3) == 1.0);
    // the order-3 entry is the full triangle structure
    Hypergraphlet tri;
    tri.order = 3;
    tri.edges = {{0b011, 0}, {0b101, 0}, {0b110, 0}};
    tri.sort_edges();
    CHECK(fv.at(canonicalize(tri)) == 1.0);
}

TEST_CASE("counting equals the all-subsets oracle on random hypergraphs") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        RandomHypergraphSpec spec;
        spec.vertices = 8 + static_cast<int>(seed % 5);
        spec.sigma_size = 2;
        spec.xi_size = 2;
        spec.pairs_per_vertex = 1.1;
        spec.triples_per_vertex = 0.6;
        auto g = random_hypergraph(spec, seed);
        for (int N = 3; N <= 4; ++N) {
            for (int v = 0; v < g.vertex_count(); v += 3) {
                auto fast = count_hypergraphlets(g, g.vertex(v).id, N);
                auto slow = oracle::count_by_subsets(g, g.vertex(v).id, N);
                CHECK(fast.entries == slow.entries);
            }
        }
    }
}

TEST_CASE("order totals equal connected induced subset counts") {
    RandomHypergraphSpec spec;
    spec.vertices = 11;
    spec.sigma_size = 3;
    spec.xi_size = 2;
    auto g = random_hypergraph(spec, 77);
    for (int v = 0; v < g.vertex_count(); v += 2) {
        auto fv = count_hypergraphlets(g, g.vertex(v).id, 4);
        auto totals = oracle::connected_subset_totals(g, g.vertex(v).id, 4);
        for (int n = 1; n <= 4; ++n)
            CHECK(fv.order_total(n) == static_cast<double>(totals.count(n) ? totals[n] : 0));
    }
}

TEST_CASE("partially-induced hyperedges contribute nothing") {
    // triple {a,b,c} cannot appear in any subset of {r,a} even though it
    // touches the neighborhood
    auto g = parse_hypergraph(std::string("v r A\nv a A\nv b A\nv c A\ne p X r a\ne t Y a b c\n"));
    auto fv = count_hypergraphlets(g, "r", 2);
    CHECK(fv.entries.size() == 2);  // 1-vertex + the pair; no phantom from the trimmed triple
    for (const auto& [code, count] : fv.entries) {
        auto h = decode(code);
        for (const auto& e : h.edges) CHECK(e.label == 0);  // label Y never appears
    }
}

TEST_CASE("cardinality-1 host edges are ignored") {
    auto with_singleton = parse_hypergraph(std::string("v a A\nv b A\ne p X a b\ne s Y a\n"));
    auto without = parse_hypergraph(std::string("v a A\nv b A\nxi X Y\ne p X a b\n"));
    CountStats stats;
    auto fv1 = count_hypergraphlets(with_singleton, "a", 4, &stats);
    auto fv2 = count_hypergraphlets(without, "a", 4);
    CHECK(fv1.entries == fv2.entries);
    CHECK(stats.singletons_ignored == 1);
}

TEST_CASE("duplicate member sets collapse with a conflict warning") {
    auto g = parse_hypergraph(std::string("v a A\nv b A\ne p X a b\ne q Y a b\n"));
    CountStats stats;
    auto fv = count_hypergraphlets(g, "a", 2, &stats);
    CHECK(stats.label_conflicts == 1);
    // first-listed label X wins
    Hypergraphlet pair;
    pair.order = 2;
    pair.edges = {{0b11, 0}};
    CHECK(fv.at(canonicalize(pair)) == 1.0);
    // same member set with the same label is a plain collapse, no warning
    auto g2 = parse_hypergraph(std::string("v a A\nv b A\ne p X a b\ne q X a b\n"));
    CountStats stats2;
    count_hypergraphlets(g2, "a", 2, &stats2);
    CHECK(stats2.label_conflicts == 0);
}

TEST_CASE("unknown root is rejected") {
    auto g = parse_hypergraph(std::string("v a A\n"));
    CHECK_THROWS_AS(count_hypergraphlets(g, "zz", 3), data_error);
    CHECK_THROWS_AS(count_hypergraphlets(g, "a", 0), data_error);
    CHECK_THROWS_AS(count_hypergraphlets(g, "a", 5), data_error);
}

TEST_CASE("feature file round trip") {
    RandomHypergraphSpec spec;
    spec.vertices = 8;
    auto g = random_hypergraph(spec, 3);
    std::vector<std::pair<std::string, FeatureVector>> features;
    for (int v = 0; v < g.vertex_count(); ++v)
        features.push_back({g.vertex(v).id, count_hypergraphlets(g, g.vertex(v).id, 4)});
    FeatureMeta meta{4, 0, 7u, g.sigma(), g.xi()};
    std::ostringstream out;
    write_features(out, features, meta);
    std::istringstream in(out.str());
    auto [back, meta_back] = read_features(in);
    REQUIRE(back.size() == features.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].first == features[i].first);
        CHECK(back[i].second.entries == features[i].second.entries);
    }
    CHECK(meta_back.order == 4);
    CHECK(meta_back.tau == 0);
    CHECK(meta_back.ops == 7u);
    CHECK(meta_back.sigma == g.sigma());
    CHECK(meta_back.xi == g.xi());
}

TEST_CASE("ops string round trip") {
    CHECK(ops_to_string(7u) == "vl,hl,hi");
    CHECK(ops_to_string(0u) == "none");
    CHECK(ops_from_string("vl,hi") == 5u);
    CHECK(ops_from_string("none") == 0u);
    CHECK_THROWS_AS(ops_from_string("bogus"), data_error);
}

}  // TEST_SUITE
