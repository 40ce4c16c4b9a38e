#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "hyperlet/counting.hpp"
#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/rng.hpp"

namespace hyperlet {

/// Reserved dual-vertex label for hypothesized (candidate) hyperedges. The
/// same symbol is used whether the candidate is a re-queried positive or a
/// missing link, so the label never encodes the answer.
inline constexpr const char* kCandidateLabel = "?";

/// Dual hypergraph with provenance. Dual vertices are the original hyperedges
/// (labels transfer from Xi); dual hyperedges are the original vertices'
/// incidence sets (labels transfer from Sigma). Degree-one original vertices
/// yield singleton dual hyperedges, repaired by a dummy twin of the single
/// member; after repair every dual hyperedge has cardinality >= 2.
struct DualHypergraph {
    Hypergraph graph;
    std::map<std::string, std::string> vertex_origin;  // dual vertex id -> original edge id
    std::map<std::string, std::string> edge_origin;    // dual edge id -> original vertex id
    std::vector<std::string> dummy_vertices;
    std::map<std::string, std::string> dummy_for;      // dual edge id -> its dummy vertex id
    std::string candidate_id;                          // set by extend_dual
};

/// A hypothesized hyperedge over the original vertex set.
struct LinkQuery {
    std::vector<std::string> candidate_members;  // sorted, distinct vertex ids

    static LinkQuery of(std::vector<std::string> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        return LinkQuery{std::move(members)};
    }
};

namespace detail {

inline DualHypergraph build_dual(const Hypergraph& g, const std::vector<int>* candidate_members,
                                 bool reserve_candidate_label) {
    if (g.edge_count() == 0) throw data_error("dual of a hypergraph with zero hyperedges");
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0)
            throw data_error("dual undefined: isolated vertex '" + g.vertex(v).id + "'");

    DualHypergraph dual;
    Hypergraph::Builder b;
    b.name(g.name().empty() ? "" : g.name() + "*");
    // Dual vertex alphabet is Xi (plus the reserved candidate symbol), dual
    // edge alphabet is Sigma; declaring them up front pins symbol indices.
    Alphabet dual_sigma;
    for (const auto& s : g.xi().symbols()) dual_sigma.add(s);
    if (candidate_members != nullptr || reserve_candidate_label) dual_sigma.add(kCandidateLabel);
    b.sigma(dual_sigma);
    Alphabet dual_xi;
    for (const auto& s : g.sigma().symbols()) dual_xi.add(s);
    b.xi(dual_xi);

    for (int e = 0; e < g.edge_count(); ++e) {
        b.add_vertex(g.edge(e).id, g.edge_label(e));
        dual.vertex_origin[g.edge(e).id] = g.edge(e).id;
    }

    std::string cand_id;
    if (candidate_members != nullptr) {
        cand_id = "~cand";
        for (int v : *candidate_members) cand_id += ":" + g.vertex(v).id;
        while (b.has_vertex(cand_id)) cand_id += "'";
        b.add_vertex(cand_id, kCandidateLabel);
        dual.candidate_id = cand_id;
    }

    int dummy_counter = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<std::string> members;
        for (int e : g.incident_edges(v)) members.push_back(g.edge(e).id);
        bool extended = candidate_members != nullptr &&
                        std::binary_search(candidate_members->begin(), candidate_members->end(), v);
        if (extended) members.push_back(cand_id);
        if (members.size() == 1) {
            // Self-loop in the dual: add a dummy twin of the single member and
            // connect them through this hyperedge.
            ++dummy_counter;
            std::string dummy_id = g.vertex(v).id + "~dummy" + std::to_string(dummy_counter);
            while (b.has_vertex(dummy_id)) dummy_id += "'";
            int original_edge = g.incident_edges(v).front();
            b.add_vertex(dummy_id, g.edge_label(original_edge));
            dual.dummy_vertices.push_back(dummy_id);
            dual.dummy_for[g.vertex(v).id] = dummy_id;
            members.push_back(dummy_id);
        }
        b.add_edge(g.vertex(v).id, g.vertex_label(v), members);
        dual.edge_origin[g.vertex(v).id] = g.vertex(v).id;
    }
    dual.graph = b.build();
    return dual;
}

inline std::vector<int> resolve_candidate(const Hypergraph& g, const LinkQuery& q) {
    if (q.candidate_members.size() < 2) throw data_error("link query needs at least two members");
    std::vector<int> idx;
    idx.reserve(q.candidate_members.size());
    for (const auto& id : q.candidate_members) idx.push_back(g.require_vertex(id));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw data_error("link query has duplicate members");
    return idx;
}

}  // namespace detail

/// Dual hypergraph of g. reserve_candidate_label pre-declares the "?" symbol
/// so plain duals share a feature space with extended duals.
inline DualHypergraph dualize(const Hypergraph& g, bool reserve_candidate_label = false) {
    return detail::build_dual(g, nullptr, reserve_candidate_label);
}

/// Extended dual for a link query: the dual of g plus one vertex for the
/// candidate, with the dual hyperedge of every candidate member extended to
/// contain it. Extension happens before self-loop repair, so a degree-one
/// member's hyperedge is completed by the candidate rather than a dummy.
inline DualHypergraph extend_dual(const Hypergraph& g, const LinkQuery& q) {
    auto idx = detail::resolve_candidate(g, q);
    return detail::build_dual(g, &idx, true);
}

/// Member sets of the given arity absent from g's hyperedge family, in
/// lexicographic vertex-index order; or a uniform seeded sample thereof.
struct CandidateSample {
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

inline std::vector<LinkQuery> enumerate_candidates(const Hypergraph& g, int arity,
                                                   std::optional<CandidateSample> sample = std::nullopt) {
    if (arity < 2) throw data_error("candidate arity must be >= 2");
    if (arity > g.vertex_count()) throw data_error("candidate arity exceeds vertex count");

    std::set<std::vector<int>> existing;
    for (int e = 0; e < g.edge_count(); ++e)
        if (g.edge(e).cardinality() == arity) existing.insert(g.edge(e).members);

    auto to_query = [&](const std::vector<int>& members) {
        std::vector<std::string> ids;
        ids.reserve(members.size());
        for (int v : members) ids.push_back(g.vertex(v).id);
        return LinkQuery{std::move(ids)};
    };

    if (!sample) {
        std::vector<LinkQuery> out;
        std::vector<int> combo(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) combo[static_cast<std::size_t>(i)] = i;
        const int n = g.vertex_count();
        while (true) {
            if (!existing.count(combo)) out.push_back(to_query(combo));
            int pos = arity - 1;
            while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == n - arity + pos) --pos;
            if (pos < 0) break;
            ++combo[static_cast<std::size_t>(pos)];
            for (int p = pos + 1; p < arity; ++p)
                combo[static_cast<std::size_t>(p)] = combo[static_cast<std::size_t>(p - 1)] + 1;
        }
        return out;
    }

    // Uniform sample without replacement by rejection; falls back to a full
    // enumeration with a seeded shuffle if rejections dominate (dense graphs).
    long long total = 1;
    for (int i = 0; i < arity; ++i) total = total * (g.vertex_count() - i) / (i + 1);
    total -= static_cast<long long>(existing.size());
    if (total <= 0) return {};
    if (sample->count >= static_cast<std::size_t>(total)) return enumerate_candidates(g, arity);

    SplitMix64 rng(stream_seed(sample->seed, static_cast<std::uint64_t>(arity), 1));
    std::set<std::vector<int>> chosen;
    std::vector<LinkQuery> out;
    std::size_t attempts = 0;
    const std::size_t max_attempts = sample->count * 64 + 4096;
    while (chosen.size() < sample->count && attempts < max_attempts) {
        ++attempts;
        std::set<int> picked;
        while (static_cast<int>(picked.size()) < arity)
            picked.insert(static_cast<int>(rng.bounded(static_cast<std::uint64_t>(g.vertex_count()))));
        std::vector<int> combo(picked.begin(), picked.end());
        if (existing.count(combo) || chosen.count(combo)) continue;
        chosen.insert(combo);
        out.push_back(to_query(combo));
    }
    if (chosen.size() < sample->count) {
        auto all = enumerate_candidates(g, arity);
        SplitMix64 rng2(stream_seed(sample->seed, static_cast<std::uint64_t>(arity), 2));
        shuffle(all, rng2);
        all.resize(sample->count);
        return all;
    }
    return out;
}

/// HGR serialization with provenance comments.
inline std::string serialize_dual(const DualHypergraph& dual) {
    std::vector<std::string> comments;
    for (const auto& [dual_id, orig] : dual.vertex_origin) comments.push_back("origin " + dual_id + " " + orig);
    for (const auto& [dual_id, orig] : dual.edge_origin) comments.push_back("origin " + dual_id + " " + orig);
    for (const auto& d : dual.dummy_vertices) comments.push_back("dummy " + d);
    if (!dual.candidate_id.empty()) comments.push_back("candidate " + dual.candidate_id);
    return serialize_hypergraph(dual.graph, comments);
}

/// Feature vector of a candidate rooted at its vertex in the extended dual,
/// computed against a shared base dual: the extension is applied as an
/// overlay and only the BFS ball of radius max_order-1 around the candidate
/// is materialized. Equivalent to counting in extend_dual(g, q).graph.
inline FeatureVector candidate_features(const Hypergraph& g, const DualHypergraph& base, const LinkQuery& q,
                                        int max_order, CountStats* stats = nullptr) {
    auto member_idx = detail::resolve_candidate(g, q);
    const Hypergraph& dg = base.graph;
    if (dg.sigma().index_of(kCandidateLabel) < 0)
        throw data_error("base dual was built without the reserved candidate label");

    // Overlay: dual edge of each candidate member gains the candidate vertex
    // (index -1) and loses its repair dummy if it had one.
    const int kCand = -1;
    std::vector<char> is_member_edge(static_cast<std::size_t>(dg.edge_count()), 0);
    for (int v : member_idx) {
        int de = dg.require_edge(g.vertex(v).id);
        is_member_edge[static_cast<std::size_t>(de)] = 1;
    }
    auto overlay_members = [&](int de) {
        std::vector<int> members = dg.edge(de).members;
        if (is_member_edge[static_cast<std::size_t>(de)]) {
            auto dummy_it = base.dummy_for.find(dg.edge(de).id);
            if (dummy_it != base.dummy_for.end()) {
                int dummy_v = dg.require_vertex(dummy_it->second);
                members.erase(std::remove(members.begin(), members.end(), dummy_v), members.end());
            }
            members.push_back(kCand);
        }
        return members;
    };

    // BFS from the candidate over the overlaid incidence structure.
    std::vector<int> dist(static_cast<std::size_t>(dg.vertex_count()), -1);
    std::vector<char> edge_seen(static_cast<std::size_t>(dg.edge_count()), 0);
    std::queue<std::pair<int, int>> frontier;  // (vertex or kCand, distance)
    frontier.push({kCand, 0});
    const int radius = max_order - 1;
    while (!frontier.empty()) {
        auto [v, d] = frontier.front();
        frontier.pop();
        if (d >= radius) continue;
        std::vector<int> incident;
        if (v == kCand) {
            for (int m : member_idx) incident.push_back(dg.require_edge(g.vertex(m).id));
        } else {
            incident = dg.incident_edges(v);
        }
        for (int de : incident) {
            if (edge_seen[static_cast<std::size_t>(de)]) continue;
            edge_seen[static_cast<std::size_t>(de)] = 1;
            for (int u : overlay_members(de)) {
                if (u == kCand) continue;
                if (dist[static_cast<std::size_t>(u)] < 0) {
                    dist[static_cast<std::size_t>(u)] = d + 1;
                    frontier.push({u, d + 1});
                }
            }
        }
    }

    // Materialize the ball: candidate first, then kept dual vertices; dual
    // edges fully inside the ball (counting ignores partially-kept edges).
    std::string cand_id = "~cand";
    for (int v : member_idx) cand_id += ":" + g.vertex(v).id;
    Hypergraph::Builder b;
    b.sigma(dg.sigma());
    b.xi(dg.xi());
    b.add_vertex(cand_id, kCandidateLabel);
    std::vector<char> kept(static_cast<std::size_t>(dg.vertex_count()), 0);
    for (int v = 0; v < dg.vertex_count(); ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0) {
            kept[static_cast<std::size_t>(v)] = 1;
            b.add_vertex(dg.vertex(v).id, dg.vertex_label(v));
        }
    for (int de = 0; de < dg.edge_count(); ++de) {
        std::vector<std::string> ids;
        bool inside = true;
        for (int u : overlay_members(de)) {
            if (u == kCand) {
                ids.push_back(cand_id);
            } else if (kept[static_cast<std::size_t>(u)]) {
                ids.push_back(dg.vertex(u).id);
            } else {
                inside = false;
                break;
            }
        }
        if (inside && !ids.empty()) b.add_edge(dg.edge(de).id, dg.edge_label(de), ids);
    }
    Hypergraph ball = b.build();
    return count_hypergraphlets(ball, cand_id, max_order, stats);
}

}  // namespace hyperlet
