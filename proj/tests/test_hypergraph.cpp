#include <doctest.h>

#include <sstream>

#include "hyperlet/hypergraph.hpp"
#include "hyperlet/synthetic.hpp"
#include "oracles.hpp"

using namespace hyperlet;

namespace {

const char* kFig1A =
    "v v1 A\nv v2 A\nv v3 A\nv v4 A\n"
    "e e1 X v1 v2\ne e2 X v2 v3\ne e3 X v1 v3\ne e4 X v3 v4\ne e5 X v1 v4\n";

}  // namespace

TEST_SUITE("hypergraph") {

TEST_CASE("parse id-less edge form") {
    auto g = parse_hypergraph(std::string("v a A\nv b A\ne X a b\n"));
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.edge(0).id == "e1");
    CHECK(g.edge_label(0) == "X");
    REQUIRE(g.edge(0).members.size() == 2);
    CHECK(g.vertex(g.edge(0).members[0]).id == "a");
    CHECK(g.vertex(g.edge(0).members[1]).id == "b");
}

TEST_CASE("duplicate member in hyperedge is rejected") {
    CHECK_THROWS_WITH_AS(parse_hypergraph(std::string("v a A\nv b A\ne X a a\n")),
                         doctest::Contains("duplicate member"), parse_error);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_hypergraph(std::string("v a A\nv a B\n"));
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("duplicate vertex id") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_hypergraph(std::string("v a A\ne e1 X a b\n")), parse_error);  // unknown member
    CHECK_THROWS_AS(parse_hypergraph(std::string("v a A\nq zzz\n")), parse_error);       // bad line kind
    CHECK_THROWS_WITH_AS(parse_hypergraph(std::string("v a A\ne e9 X\n")), doctest::Contains("empty hyperedge"),
                         parse_error);
}

TEST_CASE("explicit and declared alphabets") {
    auto g = parse_hypergraph(std::string("sigma A B C\nxi X Y\nv a A\nv b B\ne e1 X a b\n"));
    CHECK(g.sigma().size() == 3);   // declared C stays even though unobserved
    CHECK(g.xi().size() == 2);
    CHECK(g.sigma().index_of("C") == 2);
}

TEST_CASE("figure-1A degrees and connectivity") {
    auto g = parse_hypergraph(std::string(kFig1A));
    CHECK(degree(g, "v1") == 3);
    CHECK(degree(g, "v3") == 3);
    CHECK(degree(g, "v2") == 2);
    CHECK(degree(g, "v4") == 2);
    CHECK(is_connected(g));
    CHECK_THROWS_AS(degree(g, "nope"), data_error);
}

TEST_CASE("edge cardinality") {
    auto g = parse_hypergraph(std::string("v a A\nv b A\nv c A\ne p X a b\ne t X a b c\n"));
    CHECK(edge_cardinality(g, "p") == 2);
    CHECK(edge_cardinality(g, "t") == 3);
    CHECK_THROWS_AS(edge_cardinality(g, "zz"), data_error);
    for (int e = 0; e < g.edge_count(); ++e)
        CHECK(g.edge(e).cardinality() == static_cast<int>(g.edge(e).members.size()));
}

TEST_CASE("is_connected basics") {
    CHECK(is_connected(parse_hypergraph(std::string("v a A\n"))));
    CHECK_FALSE(is_connected(parse_hypergraph(std::string("v a A\nv b A\n"))));
    CHECK(is_connected(parse_hypergraph(std::string(""))));
}

TEST_CASE("is_connected agrees with a union-find oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomHypergraphSpec spec;
        spec.vertices = 3 + static_cast<int>(seed % 9);
        spec.pairs_per_vertex = 0.9;
        spec.triples_per_vertex = 0.3;
        auto g = random_hypergraph(spec, seed);
        CHECK(is_connected(g) == oracle::connected_union_find(g));
    }
}

TEST_CASE("degree sum equals cardinality sum") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomHypergraphSpec spec;
        spec.vertices = 12;
        auto g = random_hypergraph(spec, seed);
        long long dsum = 0, csum = 0;
        for (int v = 0; v < g.vertex_count(); ++v) dsum += g.degree(v);
        for (int e = 0; e < g.edge_count(); ++e) csum += g.edge(e).cardinality();
        CHECK(dsum == csum);
    }
}

TEST_CASE("neighborhood radius zero keeps trimmed singletons") {
    auto g = parse_hypergraph(std::string(kFig1A));
    auto nb = neighborhood(g, "v1", 0);
    CHECK(nb.root_id == "v1");
    CHECK(nb.graph.vertex_count() == 1);
    CHECK(nb.graph.edge_count() == 3);  // e1, e3, e5 trimmed to {v1}
    for (int e = 0; e < nb.graph.edge_count(); ++e) CHECK(nb.graph.edge(e).cardinality() == 1);
}

TEST_CASE("neighborhood radius one on figure 1A reaches every vertex") {
    auto g = parse_hypergraph(std::string(kFig1A));
    auto nb = neighborhood(g, "v1", 1);
    CHECK(nb.graph.vertex_count() == 4);
    CHECK(nb.graph.edge_count() == 5);
}

TEST_CASE("neighborhood matches BFS oracle and grows monotonically") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomHypergraphSpec spec;
        spec.vertices = 50;
        spec.pairs_per_vertex = 1.2;
        spec.triples_per_vertex = 0.4;
        auto g = random_hypergraph(spec, seed);
        auto dist = distances_from(g, 0);
        std::size_t prev = 0;
        for (int r = 0; r <= 4; ++r) {
            auto nb = neighborhood(g, g.vertex(0).id, r);
            std::size_t expected = 0;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] <= r) ++expected;
            CHECK(static_cast<std::size_t>(nb.graph.vertex_count()) == expected);
            CHECK(static_cast<std::size_t>(nb.graph.vertex_count()) >= prev);
            prev = static_cast<std::size_t>(nb.graph.vertex_count());
        }
        auto everything = neighborhood(g, g.vertex(0).id, g.vertex_count());
        std::size_t component = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (dist[static_cast<std::size_t>(v)] >= 0) ++component;
        CHECK(static_cast<std::size_t>(everything.graph.vertex_count()) == component);
    }
}

TEST_CASE("serialize/parse round trip preserves content") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomHypergraphSpec spec;
        spec.vertices = 15;
        auto g = random_hypergraph(spec, seed);
        auto text = serialize_hypergraph(g);
        auto back = parse_hypergraph(text);
        CHECK(same_content(g, back));
        CHECK(isomorphic(g, back));
    }
}

TEST_CASE("isomorphism is label-preserving and id-agnostic") {
    auto a = parse_hypergraph(std::string("v a A\nv b B\nv c A\ne e1 X a b\ne e2 Y b c\n"));
    auto renamed = parse_hypergraph(std::string("v p B\nv q A\nv r A\ne k1 Y p q\ne k2 X r p\n"));
    CHECK(isomorphic(a, renamed));
    auto different_label = parse_hypergraph(std::string("v a A\nv b B\nv c A\ne e1 X a b\ne e2 X b c\n"));
    CHECK_FALSE(isomorphic(a, different_label));
    auto different_structure = parse_hypergraph(std::string("v a A\nv b B\nv c A\ne e1 X a b\ne e2 Y a c\n"));
    CHECK_FALSE(isomorphic(a, different_structure));
}

TEST_CASE("duplicate member sets with distinct ids are legal") {
    auto g = parse_hypergraph(std::string("v a A\nv b A\ne e1 X a b\ne e2 Y a b\n"));
    CHECK(g.edge_count() == 2);
    CHECK(degree(g, "a") == 2);
}

}  // TEST_SUITE
