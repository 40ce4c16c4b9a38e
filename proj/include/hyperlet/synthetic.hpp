#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/rng.hpp"

namespace hyperlet {

/// Seeded random labeled hypergraph for tests and experiments.
struct RandomHypergraphSpec {
    int vertices = 10;
    int sigma_size = 2;
    int xi_size = 2;
    double pairs_per_vertex = 1.5;
    double triples_per_vertex = 0.5;
    int min_degree = 0;             // repaired by adding random pair edges
    bool distinct_incidence = false;  // no two vertices with identical incidence sets
    bool allow_duplicate_edges = true;
};

namespace detail {

inline std::string symbol_name(const char* prefix, int i) { return std::string(prefix) + std::to_string(i); }

inline Hypergraph try_random_hypergraph(const RandomHypergraphSpec& spec, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Hypergraph::Builder b;
    for (int s = 0; s < spec.sigma_size; ++s) b.declare_vertex_symbol(symbol_name("S", s));
    for (int x = 0; x < spec.xi_size; ++x) b.declare_edge_symbol(symbol_name("X", x));
    const int n = spec.vertices;
    for (int v = 0; v < n; ++v)
        b.add_vertex("v" + std::to_string(v),
                     symbol_name("S", static_cast<int>(rng.bounded(static_cast<std::uint64_t>(spec.sigma_size)))));

    std::set<std::vector<int>> used;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    int edge_counter = 0;
    auto add = [&](std::vector<int> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.size() < 2) return false;
        if (!spec.allow_duplicate_edges && used.count(members)) return false;
        used.insert(members);
        std::vector<std::string> ids;
        for (int v : members) {
            ids.push_back("v" + std::to_string(v));
            ++degree[static_cast<std::size_t>(v)];
        }
        b.add_edge("e" + std::to_string(edge_counter++),
                   symbol_name("X", static_cast<int>(rng.bounded(static_cast<std::uint64_t>(spec.xi_size)))), ids);
        return true;
    };

    auto rand_vertex = [&]() { return static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n))); };
    int pair_target = static_cast<int>(spec.pairs_per_vertex * n);
    for (int t = 0; t < pair_target; ++t) add({rand_vertex(), rand_vertex()});
    int triple_target = static_cast<int>(spec.triples_per_vertex * n);
    for (int t = 0; t < triple_target; ++t) add({rand_vertex(), rand_vertex(), rand_vertex()});

    for (int v = 0; v < n; ++v) {
        int guard = 0;
        while (degree[static_cast<std::size_t>(v)] < spec.min_degree && guard++ < 200) {
            int other = rand_vertex();
            if (other != v) add({v, other});
        }
    }
    return b.build();
}

inline bool incidence_sets_distinct(const Hypergraph& g) {
    std::set<std::vector<int>> seen;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen.insert(g.incident_edges(v)).second) return false;
    return true;
}

}  // namespace detail

inline Hypergraph random_hypergraph(const RandomHypergraphSpec& spec, std::uint64_t seed) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Hypergraph g = detail::try_random_hypergraph(spec, stream_seed(seed, static_cast<std::uint64_t>(attempt), 7));
        bool degrees_ok = true;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) < spec.min_degree) degrees_ok = false;
        if (!degrees_ok) continue;
        if (spec.distinct_incidence && !detail::incidence_sets_distinct(g)) continue;
        return g;
    }
    throw data_error("random_hypergraph could not satisfy the requested constraints");
}

/// Planted-motif vertex-classification benchmark: class labels are determined
/// by the presence of a local motif — an incident 3-hyperedge labeled Y whose
/// other two members both carry the vertex label M. Positive roots get two
/// planted motif edges; negative roots get decoys (Y-triples with exactly one
/// M member) so degree statistics alone do not separate the classes. Labels
/// are recomputed from the final structure, so they reflect motif presence
/// exactly even where plants overlap.
struct SyntheticBenchmark {
    Hypergraph graph;
    std::vector<std::pair<std::string, int>> labels;  // (vertex id, +1/-1)
};

inline SyntheticBenchmark make_benchmark(int vertex_count, std::uint64_t seed) {
    if (vertex_count < 20) throw data_error("benchmark needs at least 20 vertices");
    SplitMix64 rng(stream_seed(seed, 0xbe9c, 0));
    const int n = vertex_count;

    int width = 1;
    for (int x = n - 1; x >= 10; x /= 10) ++width;
    auto vid = [&](int v) {
        std::string digits = std::to_string(v);
        return "n" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
    };

    Hypergraph::Builder b;
    b.name("synthetic-benchmark");
    b.declare_vertex_symbol("A");
    b.declare_vertex_symbol("B");
    b.declare_vertex_symbol("C");
    b.declare_vertex_symbol("M");
    b.declare_edge_symbol("X");
    b.declare_edge_symbol("Y");

    std::vector<int> m_vertices;
    std::vector<std::string> labels_sym(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        bool is_m = rng.bounded(4) == 0;
        labels_sym[static_cast<std::size_t>(v)] = is_m ? "M" : std::string(1, static_cast<char>('A' + rng.bounded(3)));
        if (is_m) m_vertices.push_back(v);
        b.add_vertex(vid(v), labels_sym[static_cast<std::size_t>(v)]);
    }
    if (m_vertices.size() < 4) throw data_error("benchmark seed produced too few motif-label vertices");

    int edge_counter = 0;
    std::set<std::vector<std::string>> used;
    auto add_edge = [&](std::vector<std::string> members, const std::string& label) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.size() < 2) return;
        std::vector<std::string> key = members;
        key.push_back(label);
        if (used.count(key)) return;
        used.insert(key);
        b.add_edge("e" + std::to_string(edge_counter++), label, members);
    };

    auto rand_vertex = [&]() { return static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n))); };
    auto rand_m = [&]() { return m_vertices[static_cast<std::size_t>(rng.bounded(m_vertices.size()))]; };
    auto rand_non_m = [&]() {
        int v = rand_vertex();
        while (labels_sym[static_cast<std::size_t>(v)] == "M") v = rand_vertex();
        return v;
    };

    // Background: sparse X-labeled pairs and triples common to both classes.
    for (int v = 0; v < n; ++v)
        for (int t = 0; t < 2; ++t) {
            int other = rand_vertex();
            if (other != v) add_edge({vid(v), vid(other)}, "X");
        }
    for (int t = 0; t < n / 4; ++t)
        add_edge({vid(rand_vertex()), vid(rand_vertex()), vid(rand_vertex())}, "X");

    // Plants: positives receive two motif triples, negatives one or two
    // decoy triples.
    for (int v = 0; v < n; ++v) {
        bool planted_positive = rng.bounded(2) == 0;
        if (planted_positive) {
            for (int t = 0; t < 2; ++t) {
                int m1 = rand_m(), m2 = rand_m();
                int guard = 0;
                while ((m1 == m2 || m1 == v || m2 == v) && guard++ < 100) {
                    m1 = rand_m();
                    m2 = rand_m();
                }
                if (guard >= 100) continue;
                add_edge({vid(v), vid(m1), vid(m2)}, "Y");
            }
        } else {
            int decoys = 1 + static_cast<int>(rng.bounded(2));
            for (int t = 0; t < decoys; ++t) {
                int m1 = rand_m();
                int b1 = rand_non_m();
                if (m1 == v || b1 == v || m1 == b1) continue;
                add_edge({vid(v), vid(m1), vid(b1)}, "Y");
            }
        }
    }

    SyntheticBenchmark out;
    out.graph = b.build();

    // Ground truth from the final structure.
    const Hypergraph& g = out.graph;
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool motif = false;
        for (int e : g.incident_edges(v)) {
            if (g.edge_label(e) != "Y" || g.edge(e).cardinality() != 3) continue;
            int m_count = 0;
            for (int u : g.edge(e).members)
                if (u != v && g.vertex_label(u) == "M") ++m_count;
            if (m_count == 2) {
                motif = true;
                break;
            }
        }
        out.labels.push_back({g.vertex(v).id, motif ? 1 : -1});
    }
    return out;
}

}  // namespace hyperlet
