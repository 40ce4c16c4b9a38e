#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/kernel.hpp"
#include "hyperlet/parallel.hpp"
#include "hyperlet/rng.hpp"

namespace hyperlet {

/// Simultaneous random-walk configuration. Exact-match mode scores 1 per
/// completed walk whose full vertex- and hyperedge-label sequences agree;
/// cumulative mode scores 1 per step on which the destination-vertex labels
/// or the picked-hyperedge labels agree (a length-l walk contributes 0..l).
struct WalkConfig {
    int total_steps = 10000;     // steps across all walk segments
    double restart_prob = 0.1;   // drawn after each step; restarts both walks
    std::uint64_t seed = 0;
    bool cumulative = false;
    bool allow_self_destination = false;  // may a step stay on its vertex
    bool exclude_arriving_edge = false;   // may a step re-pick the arriving edge
};

namespace detail {

/// Incident edges usable by a walk: cardinality >= 2 (a singleton offers no
/// destination unless self-destinations are allowed).
inline std::vector<int> walkable_edges(const Hypergraph& g, int v, bool allow_self) {
    std::vector<int> out;
    for (int e : g.incident_edges(v))
        if (g.edge(e).cardinality() >= 2 || allow_self) out.push_back(e);
    return out;
}

}  // namespace detail

/// Simultaneous random-walk kernel score between two vertices.
///
/// RNG stream: SplitMix64 seeded with stream_seed(cfg.seed, index(u),
/// index(v)). Per step the draws are, in order: u's edge pick (bounded),
/// u's destination pick (bounded), v's edge pick, v's destination pick, then
/// one next_double() compared against restart_prob. Destination picks index
/// into the edge's member list with the current vertex removed (kept when
/// allow_self_destination is set); edge picks index into the incident list,
/// with the arriving edge removed when exclude_arriving_edge is set and the
/// degree allows it. Walk segments with zero steps score nothing.
inline double random_walk_kernel(const Hypergraph& g, std::string_view u_id, std::string_view v_id,
                                 const WalkConfig& cfg) {
    if (cfg.total_steps <= 0) throw data_error("walk needs total_steps > 0");
    if (!(cfg.restart_prob > 0.0) || !(cfg.restart_prob < 1.0))
        throw data_error("restart probability must lie in (0,1)");
    const int u0 = g.require_vertex(u_id);
    const int v0 = g.require_vertex(v_id);
    if (detail::walkable_edges(g, u0, cfg.allow_self_destination).empty())
        throw data_error("isolated vertex '" + std::string(u_id) + "' cannot start a walk");
    if (detail::walkable_edges(g, v0, cfg.allow_self_destination).empty())
        throw data_error("isolated vertex '" + std::string(v_id) + "' cannot start a walk");

    SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(u0), static_cast<std::uint64_t>(v0)));

    auto pick_edge = [&](int current, int arrived) {
        auto edges = detail::walkable_edges(g, current, cfg.allow_self_destination);
        if (cfg.exclude_arriving_edge && arrived >= 0 && edges.size() > 1) {
            std::vector<int> filtered;
            for (int e : edges)
                if (e != arrived) filtered.push_back(e);
            edges = std::move(filtered);
        }
        if (edges.empty()) return -1;
        return edges[static_cast<std::size_t>(rng.bounded(edges.size()))];
    };
    auto pick_destination = [&](int edge, int current) {
        std::vector<int> dests;
        for (int m : g.edge(edge).members)
            if (cfg.allow_self_destination || m != current) dests.push_back(m);
        if (dests.empty()) return current;  // singleton with self allowed only
        return dests[static_cast<std::size_t>(rng.bounded(dests.size()))];
    };

    double score = 0.0;
    int cu = u0, cv = v0;
    int arrived_u = -1, arrived_v = -1;
    int segment_steps = 0;
    bool segment_match = g.vertex(u0).label == g.vertex(v0).label;

    for (int step = 0; step < cfg.total_steps; ++step) {
        int eu = pick_edge(cu, arrived_u);
        int nu = eu >= 0 ? pick_destination(eu, cu) : cu;
        int ev = pick_edge(cv, arrived_v);
        int nv = ev >= 0 ? pick_destination(ev, cv) : cv;
        if (eu < 0 || ev < 0)
            throw data_error("walk reached a vertex with no usable hyperedge");

        bool edge_match = g.edge(eu).label == g.edge(ev).label;
        bool vertex_match = g.vertex(nu).label == g.vertex(nv).label;
        if (cfg.cumulative && (edge_match || vertex_match)) score += 1.0;
        segment_match = segment_match && edge_match && vertex_match;
        ++segment_steps;
        cu = nu;
        cv = nv;
        arrived_u = eu;
        arrived_v = ev;

        if (rng.next_double() < cfg.restart_prob) {
            if (!cfg.cumulative && segment_steps > 0 && segment_match) score += 1.0;
            cu = u0;
            cv = v0;
            arrived_u = arrived_v = -1;
            segment_steps = 0;
            segment_match = g.vertex(u0).label == g.vertex(v0).label;
        }
    }
    if (!cfg.cumulative && segment_steps > 0 && segment_match) score += 1.0;
    return score;
}

/// Gram matrix of random-walk scores over the given vertex ids, exactly
/// symmetrized by averaging the (u,v) and (v,u) runs.
inline KernelMatrix random_walk_gram(const Hypergraph& g, const std::vector<std::string>& ids,
                                     const WalkConfig& cfg, int threads = 1) {
    KernelMatrix km;
    km.ids = ids;
    const int n = km.size();
    km.values = Matrix(n, n);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
        const int i = static_cast<int>(row);
        for (int j = i; j < n; ++j) {
            double forward = random_walk_kernel(g, ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)], cfg);
            double backward = random_walk_kernel(g, ids[static_cast<std::size_t>(j)], ids[static_cast<std::size_t>(i)], cfg);
            km.values.at(i, j) = (forward + backward) / 2.0;
        }
    });
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) km.values.at(i, j) = km.values.at(j, i);
    return km;
}

struct SequenceRecord {
    std::string id;        // must match a hypergraph vertex id
    std::string residues;
};

/// FASTA: headers are taken up to the first whitespace.
inline std::vector<SequenceRecord> parse_fasta(std::istream& in) {
    std::vector<SequenceRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            std::size_t end = line.find_first_of(" \t", 1);
            std::string id = line.substr(1, end == std::string::npos ? std::string::npos : end - 1);
            if (id.empty()) throw parse_error(lineno, "FASTA header with empty id");
            records.push_back({std::move(id), ""});
        } else {
            if (records.empty()) throw parse_error(lineno, "sequence data before any FASTA header");
            records.back().residues += line;
        }
    }
    for (const auto& r : records)
        if (r.residues.empty()) throw data_error("FASTA record '" + r.id + "' has no residues");
    return records;
}

/// Counts of all contiguous k-mers.
inline std::map<std::string, long long> spectrum_features(const SequenceRecord& s, int k) {
    if (k < 1) throw data_error("k-mer size must be >= 1");
    if (static_cast<int>(s.residues.size()) < k)
        throw data_error("sequence '" + s.id + "' is shorter than k");
    std::map<std::string, long long> counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= s.residues.size(); ++i)
        ++counts[s.residues.substr(i, static_cast<std::size_t>(k))];
    return counts;
}

/// Cosine-normalized spectrum inner product between two k-mer count maps.
inline double spectrum_kernel(const std::map<std::string, long long>& a,
                              const std::map<std::string, long long>& b) {
    double dot = 0, na = 0, nb = 0;
    for (const auto& [kmer, c] : a) na += static_cast<double>(c) * static_cast<double>(c);
    for (const auto& [kmer, c] : b) nb += static_cast<double>(c) * static_cast<double>(c);
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) ++ia;
        else if (ib->first < ia->first) ++ib;
        else {
            dot += static_cast<double>(ia->second) * static_cast<double>(ib->second);
            ++ia;
            ++ib;
        }
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / std::sqrt(na * nb);
}

struct PairExample {
    std::string id;
    std::string first;
    std::string second;
};

/// Pairwise spectrum kernel over vertex pairs: with base kernel K the pair
/// value is K'((a,b),(c,d)) = K(a,c)K(b,d) + K(a,d)K(b,c). The raw pair Gram
/// is returned; pass normalize = true to cosine-normalize it for SVM use.
inline KernelMatrix pairwise_spectrum_kernel(const std::vector<PairExample>& pairs,
                                             const std::vector<SequenceRecord>& seqs, int k,
                                             bool normalize = false) {
    std::map<std::string, std::map<std::string, long long>> features;
    for (const auto& s : seqs) features[s.id] = spectrum_features(s, k);
    auto feature_of = [&](const std::string& id) -> const std::map<std::string, long long>& {
        auto it = features.find(id);
        if (it == features.end()) throw data_error("missing sequence for vertex '" + id + "'");
        return it->second;
    };

    // Base kernel values over the distinct vertices involved.
    std::vector<std::string> vertex_ids;
    for (const auto& p : pairs) {
        vertex_ids.push_back(p.first);
        vertex_ids.push_back(p.second);
    }
    std::sort(vertex_ids.begin(), vertex_ids.end());
    vertex_ids.erase(std::unique(vertex_ids.begin(), vertex_ids.end()), vertex_ids.end());
    std::map<std::string, int> vid;
    for (std::size_t i = 0; i < vertex_ids.size(); ++i) vid[vertex_ids[i]] = static_cast<int>(i);
    const int nv = static_cast<int>(vertex_ids.size());
    Matrix base(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) {
            double v = spectrum_kernel(feature_of(vertex_ids[static_cast<std::size_t>(i)]),
                                       feature_of(vertex_ids[static_cast<std::size_t>(j)]));
            base.at(i, j) = v;
            base.at(j, i) = v;
        }

    KernelMatrix km;
    for (const auto& p : pairs) km.ids.push_back(p.id);
    const int n = km.size();
    km.values = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        int a = vid[pairs[static_cast<std::size_t>(i)].first];
        int b = vid[pairs[static_cast<std::size_t>(i)].second];
        for (int j = i; j < n; ++j) {
            int c = vid[pairs[static_cast<std::size_t>(j)].first];
            int d = vid[pairs[static_cast<std::size_t>(j)].second];
            double v = base.at(a, c) * base.at(b, d) + base.at(a, d) * base.at(b, c);
            km.values.at(i, j) = v;
            km.values.at(j, i) = v;
        }
    }
    return normalize ? cosine_normalize(km) : km;
}

}  // namespace hyperlet
