#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperlet/errors.hpp"

namespace hyperlet {

namespace detail {

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    std::size_t operator()(const std::string& s) const { return std::hash<std::string_view>{}(s); }
};

using StringIndexMap = std::unordered_map<std::string, int, StringHash, std::equal_to<>>;

inline std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

/// Ordered finite label alphabet. Symbol indices are stable: the first time a
/// symbol is added (declared or observed) fixes its index, so canonical codes
/// built against the same alphabet are comparable.
class Alphabet {
public:
    Alphabet() = default;

    /// Adds a symbol if not present; returns its index either way.
    int add(std::string_view symbol) {
        auto it = index_.find(symbol);
        if (it != index_.end()) return it->second;
        int idx = static_cast<int>(symbols_.size());
        symbols_.emplace_back(symbol);
        index_.emplace(symbols_.back(), idx);
        return idx;
    }

    /// Index of a symbol, or -1 when unknown.
    int index_of(std::string_view symbol) const {
        auto it = index_.find(symbol);
        return it == index_.end() ? -1 : it->second;
    }

    bool contains(std::string_view symbol) const { return index_of(symbol) >= 0; }
    const std::string& symbol(int index) const { return symbols_.at(static_cast<std::size_t>(index)); }
    int size() const { return static_cast<int>(symbols_.size()); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<std::string> symbols_;
    detail::StringIndexMap index_;
};

struct VertexRecord {
    std::string id;
    int label = 0;  // index into the sigma alphabet
};

struct EdgeRecord {
    std::string id;
    int label = 0;             // index into the xi alphabet
    std::vector<int> members;  // sorted, distinct vertex indices

    int cardinality() const { return static_cast<int>(members.size()); }
};

/// Vertex- and hyperedge-labeled hypergraph. Immutable after construction;
/// all queries are read-only and safe to call concurrently.
///
/// Vertex and edge ids are opaque strings; internal processing uses dense
/// indices assigned in insertion (file) order. Two hyperedges may share a
/// member set as long as their ids differ.
class Hypergraph {
public:
    class Builder;

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const VertexRecord& vertex(int index) const { return vertices_.at(static_cast<std::size_t>(index)); }
    const EdgeRecord& edge(int index) const { return edges_.at(static_cast<std::size_t>(index)); }
    const std::vector<VertexRecord>& vertices() const { return vertices_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }

    const Alphabet& sigma() const { return sigma_; }
    const Alphabet& xi() const { return xi_; }
    const std::string& name() const { return name_; }

    int vertex_index(std::string_view id) const {
        auto it = vertex_index_.find(id);
        return it == vertex_index_.end() ? -1 : it->second;
    }

    int edge_index(std::string_view id) const {
        auto it = edge_index_.find(id);
        return it == edge_index_.end() ? -1 : it->second;
    }

    int require_vertex(std::string_view id) const {
        int v = vertex_index(id);
        if (v < 0) throw data_error("unknown vertex id '" + std::string(id) + "'");
        return v;
    }

    int require_edge(std::string_view id) const {
        int e = edge_index(id);
        if (e < 0) throw data_error("unknown edge id '" + std::string(id) + "'");
        return e;
    }

    /// Edges incident with a vertex, in edge order.
    const std::vector<int>& incident_edges(int vertex_index) const {
        return incidence_.at(static_cast<std::size_t>(vertex_index));
    }

    int degree(int vertex_index) const { return static_cast<int>(incident_edges(vertex_index).size()); }

    const std::string& vertex_label(int vertex_index) const { return sigma_.symbol(vertex(vertex_index).label); }
    const std::string& edge_label(int edge_index) const { return xi_.symbol(edge(edge_index).label); }

private:
    friend class Builder;

    std::vector<VertexRecord> vertices_;
    std::vector<EdgeRecord> edges_;
    Alphabet sigma_;
    Alphabet xi_;
    std::string name_;
    detail::StringIndexMap vertex_index_;
    detail::StringIndexMap edge_index_;
    std::vector<std::vector<int>> incidence_;
};

class Hypergraph::Builder {
public:
    Builder& name(std::string n) {
        name_ = std::move(n);
        return *this;
    }

    Builder& declare_vertex_symbol(std::string_view s) {
        sigma_.add(s);
        return *this;
    }

    Builder& declare_edge_symbol(std::string_view s) {
        xi_.add(s);
        return *this;
    }

    Builder& sigma(const Alphabet& a) {
        sigma_ = a;
        return *this;
    }

    Builder& xi(const Alphabet& a) {
        xi_ = a;
        return *this;
    }

    int add_vertex(std::string_view id, std::string_view label) {
        if (vertex_index_.find(id) != vertex_index_.end())
            throw data_error("duplicate vertex id '" + std::string(id) + "'");
        VertexRecord rec;
        rec.id = std::string(id);
        rec.label = sigma_.add(label);
        int idx = static_cast<int>(vertices_.size());
        vertices_.push_back(std::move(rec));
        vertex_index_.emplace(vertices_.back().id, idx);
        return idx;
    }

    int add_edge(std::string_view id, std::string_view label, const std::vector<std::string>& member_ids) {
        if (edge_index_.find(id) != edge_index_.end())
            throw data_error("duplicate edge id '" + std::string(id) + "'");
        if (member_ids.empty()) throw data_error("empty hyperedge '" + std::string(id) + "'");
        EdgeRecord rec;
        rec.id = std::string(id);
        rec.label = xi_.add(label);
        rec.members.reserve(member_ids.size());
        for (const auto& m : member_ids) {
            auto it = vertex_index_.find(m);
            if (it == vertex_index_.end())
                throw data_error("hyperedge '" + std::string(id) + "' references unknown vertex '" + m + "'");
            rec.members.push_back(it->second);
        }
        std::sort(rec.members.begin(), rec.members.end());
        if (std::adjacent_find(rec.members.begin(), rec.members.end()) != rec.members.end())
            throw data_error("duplicate member in hyperedge '" + std::string(id) + "'");
        int idx = static_cast<int>(edges_.size());
        edges_.push_back(std::move(rec));
        edge_index_.emplace(edges_.back().id, idx);
        return idx;
    }

    bool has_vertex(std::string_view id) const { return vertex_index_.find(id) != vertex_index_.end(); }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    Hypergraph build() {
        Hypergraph g;
        g.vertices_ = std::move(vertices_);
        g.edges_ = std::move(edges_);
        g.sigma_ = std::move(sigma_);
        g.xi_ = std::move(xi_);
        g.name_ = std::move(name_);
        g.vertex_index_ = std::move(vertex_index_);
        g.edge_index_ = std::move(edge_index_);
        g.incidence_.assign(g.vertices_.size(), {});
        for (int e = 0; e < g.edge_count(); ++e)
            for (int v : g.edges_[static_cast<std::size_t>(e)].members)
                g.incidence_[static_cast<std::size_t>(v)].push_back(e);
        return g;
    }

private:
    std::vector<VertexRecord> vertices_;
    std::vector<EdgeRecord> edges_;
    Alphabet sigma_;
    Alphabet xi_;
    std::string name_;
    detail::StringIndexMap vertex_index_;
    detail::StringIndexMap edge_index_;
};

/// d(v): number of hyperedges incident with v.
inline int degree(const Hypergraph& g, std::string_view vertex_id) {
    return g.degree(g.require_vertex(vertex_id));
}

/// delta(e): cardinality of a hyperedge.
inline int edge_cardinality(const Hypergraph& g, std::string_view edge_id) {
    return g.edge(g.require_edge(edge_id)).cardinality();
}

/// BFS distances (number of hyperedges on a shortest walk) from a vertex.
/// Unreachable vertices get -1.
inline std::vector<int> distances_from(const Hypergraph& g, int source) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<char> edge_seen(static_cast<std::size_t>(g.edge_count()), 0);
    std::queue<int> frontier;
    dist[static_cast<std::size_t>(source)] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int e : g.incident_edges(v)) {
            if (edge_seen[static_cast<std::size_t>(e)]) continue;
            edge_seen[static_cast<std::size_t>(e)] = 1;
            for (int u : g.edge(e).members) {
                if (dist[static_cast<std::size_t>(u)] < 0) {
                    dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                    frontier.push(u);
                }
            }
        }
    }
    return dist;
}

/// True iff every pair of vertices is joined by a walk. The empty hypergraph
/// is connected by convention.
inline bool is_connected(const Hypergraph& g) {
    if (g.vertex_count() == 0) return true;
    auto dist = distances_from(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

/// Rooted restriction of a hypergraph to vertices within a given distance of
/// the root. Hyperedges keep their ids and labels with member sets intersected
/// with the kept vertices; empty intersections are dropped.
struct NeighborhoodHypergraph {
    std::string root_id;
    Hypergraph graph;
};

inline NeighborhoodHypergraph neighborhood(const Hypergraph& g, std::string_view root_id, int radius) {
    int root = g.require_vertex(root_id);
    if (radius < 0) throw data_error("neighborhood radius must be nonnegative");
    auto dist = distances_from(g, root);
    std::vector<char> keep(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        keep[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(v)] >= 0 &&
                                            dist[static_cast<std::size_t>(v)] <= radius;

    Hypergraph::Builder b;
    b.sigma(g.sigma());
    b.xi(g.xi());
    b.name(g.name());
    for (int v = 0; v < g.vertex_count(); ++v)
        if (keep[static_cast<std::size_t>(v)]) b.add_vertex(g.vertex(v).id, g.vertex_label(v));
    for (int e = 0; e < g.edge_count(); ++e) {
        std::vector<std::string> members;
        for (int v : g.edge(e).members)
            if (keep[static_cast<std::size_t>(v)]) members.push_back(g.vertex(v).id);
        if (!members.empty()) b.add_edge(g.edge(e).id, g.edge_label(e), members);
    }
    return NeighborhoodHypergraph{std::string(root_id), b.build()};
}

/// Content equality: same ids, labels and member sets in the same order.
inline bool same_content(const Hypergraph& a, const Hypergraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    for (int v = 0; v < a.vertex_count(); ++v) {
        if (a.vertex(v).id != b.vertex(v).id) return false;
        if (a.vertex_label(v) != b.vertex_label(v)) return false;
    }
    for (int e = 0; e < a.edge_count(); ++e) {
        if (a.edge(e).id != b.edge(e).id) return false;
        if (a.edge_label(e) != b.edge_label(e)) return false;
        const auto& ma = a.edge(e).members;
        const auto& mb = b.edge(e).members;
        if (ma.size() != mb.size()) return false;
        for (std::size_t i = 0; i < ma.size(); ++i)
            if (a.vertex(ma[i]).id != b.vertex(mb[i]).id) return false;
    }
    return true;
}

namespace detail {

/// Label-preserving hypergraph isomorphism by backtracking over vertex maps,
/// pruned with (label, degree, incident-signature) invariants. Intended for
/// test-scale graphs; exact, ignores ids.
class IsomorphismSearch {
public:
    IsomorphismSearch(const Hypergraph& a, const Hypergraph& b) : a_(a), b_(b) {}

    bool run() {
        if (a_.vertex_count() != b_.vertex_count() || a_.edge_count() != b_.edge_count()) return false;
        sig_a_ = signatures(a_);
        sig_b_ = signatures(b_);
        {
            auto sa = sig_a_, sb = sig_b_;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb) return false;
        }
        edge_keys_b_ = edge_key_multiset(b_);
        order_ = bfs_order(a_);
        map_.assign(static_cast<std::size_t>(a_.vertex_count()), -1);
        used_.assign(static_cast<std::size_t>(b_.vertex_count()), 0);
        return extend(0);
    }

private:
    using Signature = std::string;

    static std::vector<Signature> signatures(const Hypergraph& g) {
        std::vector<Signature> out(static_cast<std::size_t>(g.vertex_count()));
        for (int v = 0; v < g.vertex_count(); ++v) {
            std::vector<std::string> parts;
            for (int e : g.incident_edges(v))
                parts.push_back(g.edge_label(e) + "#" + std::to_string(g.edge(e).cardinality()));
            std::sort(parts.begin(), parts.end());
            Signature s = g.vertex_label(v) + "|" + std::to_string(g.degree(v));
            for (const auto& p : parts) s += "|" + p;
            out[static_cast<std::size_t>(v)] = s;
        }
        return out;
    }

    static std::multiset<std::string> edge_key_multiset(const Hypergraph& g) {
        std::multiset<std::string> keys;
        for (int e = 0; e < g.edge_count(); ++e) keys.insert(edge_key(g, e));
        return keys;
    }

    static std::string edge_key(const Hypergraph& g, int e) {
        std::vector<int> m = g.edge(e).members;
        std::string k = g.edge_label(e);
        for (int v : m) k += "," + std::to_string(v);
        return k;
    }

    static std::vector<int> bfs_order(const Hypergraph& g) {
        // Visit vertices in an order that keeps partial maps connected where
        // possible, which makes the edge-consistency pruning effective.
        std::vector<int> order;
        std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
        for (int start = 0; start < g.vertex_count(); ++start) {
            if (seen[static_cast<std::size_t>(start)]) continue;
            std::queue<int> q;
            q.push(start);
            seen[static_cast<std::size_t>(start)] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                order.push_back(v);
                for (int e : g.incident_edges(v))
                    for (int u : g.edge(e).members)
                        if (!seen[static_cast<std::size_t>(u)]) {
                            seen[static_cast<std::size_t>(u)] = 1;
                            q.push(u);
                        }
            }
        }
        return order;
    }

    bool extend(std::size_t pos) {
        if (pos == order_.size()) return edges_match();
        int v = order_[pos];
        for (int u = 0; u < b_.vertex_count(); ++u) {
            if (used_[static_cast<std::size_t>(u)]) continue;
            if (sig_a_[static_cast<std::size_t>(v)] != sig_b_[static_cast<std::size_t>(u)]) continue;
            map_[static_cast<std::size_t>(v)] = u;
            used_[static_cast<std::size_t>(u)] = 1;
            if (consistent(v) && extend(pos + 1)) return true;
            map_[static_cast<std::size_t>(v)] = -1;
            used_[static_cast<std::size_t>(u)] = 0;
        }
        return false;
    }

    /// Every edge of A fully inside the mapped domain must have a matching
    /// edge (same label, image member set) in B, with multiplicity.
    bool consistent(int just_mapped) {
        std::multiset<std::string> needed;
        for (int e : a_.incident_edges(just_mapped)) {
            bool complete = true;
            std::vector<int> image;
            for (int v : a_.edge(e).members) {
                int m = map_[static_cast<std::size_t>(v)];
                if (m < 0) {
                    complete = false;
                    break;
                }
                image.push_back(m);
            }
            if (!complete) continue;
            std::sort(image.begin(), image.end());
            std::string key = a_.edge_label(e);
            for (int v : image) key += "," + std::to_string(v);
            needed.insert(key);
        }
        for (const auto& key : needed)
            if (needed.count(key) > edge_keys_b_.count(key)) return false;
        return true;
    }

    bool edges_match() {
        std::multiset<std::string> mapped;
        for (int e = 0; e < a_.edge_count(); ++e) {
            std::vector<int> image;
            for (int v : a_.edge(e).members) image.push_back(map_[static_cast<std::size_t>(v)]);
            std::sort(image.begin(), image.end());
            std::string key = a_.edge_label(e);
            for (int v : image) key += "," + std::to_string(v);
            mapped.insert(key);
        }
        return mapped == edge_keys_b_;
    }

    const Hypergraph& a_;
    const Hypergraph& b_;
    std::vector<Signature> sig_a_, sig_b_;
    std::multiset<std::string> edge_keys_b_;
    std::vector<int> order_;
    std::vector<int> map_;
    std::vector<char> used_;
};

}  // namespace detail

/// Exact label-preserving isomorphism test (interrelated vertex and edge
/// bijections). Vertex/edge ids are ignored.
inline bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
    return detail::IsomorphismSearch(a, b).run();
}

// ---------------------------------------------------------------------------
// HGR text format
//
//   # comment
//   t <name>
//   sigma <sym> <sym> ...
//   xi <sym> ...
//   v <id> <label>
//   e <id> <label> <vid1> <vid2> ...
//   e <label> <vid1> <vid2> ...        (id-less form, id auto-assigned e<k>)
//
// The id-less edge form is recognized when the token in the label position and
// everything after it are declared vertex ids. A line whose intended label
// string collides with a vertex id must therefore use the explicit-id form.
// ---------------------------------------------------------------------------

inline Hypergraph parse_hypergraph(std::istream& in) {
    Hypergraph::Builder b;
    std::string line;
    int lineno = 0;
    int auto_edge = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::split_tokens(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        const std::string& kind = tok[0];
        try {
            if (kind == "t") {
                if (tok.size() < 2) throw data_error("missing name after 't'");
                b.name(tok[1]);
            } else if (kind == "sigma") {
                for (std::size_t i = 1; i < tok.size(); ++i) b.declare_vertex_symbol(tok[i]);
            } else if (kind == "xi") {
                for (std::size_t i = 1; i < tok.size(); ++i) b.declare_edge_symbol(tok[i]);
            } else if (kind == "v") {
                if (tok.size() != 3) throw data_error("vertex line must be 'v <id> <label>'");
                b.add_vertex(tok[1], tok[2]);
            } else if (kind == "e") {
                if (tok.size() < 3) throw data_error("edge line must carry a label and at least one member");
                bool idless = true;
                for (std::size_t i = 2; i < tok.size(); ++i)
                    if (!b.has_vertex(tok[i])) {
                        idless = false;
                        break;
                    }
                if (idless && b.has_vertex(tok[2])) {
                    ++auto_edge;
                    std::string id = "e" + std::to_string(auto_edge);
                    while (true) {
                        // Skip ids taken by explicit edges.
                        try {
                            b.add_edge(id, tok[1], std::vector<std::string>(tok.begin() + 2, tok.end()));
                            break;
                        } catch (const data_error& ex) {
                            if (std::string(ex.what()).find("duplicate edge id") == std::string::npos) throw;
                            ++auto_edge;
                            id = "e" + std::to_string(auto_edge);
                        }
                    }
                } else {
                    if (tok.size() < 4) throw data_error("empty hyperedge '" + tok[1] + "'");
                    b.add_edge(tok[1], tok[2], std::vector<std::string>(tok.begin() + 3, tok.end()));
                }
            } else {
                throw data_error("unrecognized line kind '" + kind + "'");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const data_error& ex) {
            throw parse_error(lineno, ex.what());
        }
    }
    return b.build();
}

inline Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    return parse_hypergraph(in);
}

/// Serializes in HGR form; extra_comments are emitted verbatim after the
/// header (used for dual-graph provenance).
inline void serialize_hypergraph(std::ostream& out, const Hypergraph& g,
                                 const std::vector<std::string>& extra_comments = {}) {
    if (!g.name().empty()) out << "t " << g.name() << "\n";
    for (const auto& c : extra_comments) out << "# " << c << "\n";
    if (g.sigma().size() > 0) {
        out << "sigma";
        for (const auto& s : g.sigma().symbols()) out << " " << s;
        out << "\n";
    }
    if (g.xi().size() > 0) {
        out << "xi";
        for (const auto& s : g.xi().symbols()) out << " " << s;
        out << "\n";
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        out << "v " << g.vertex(v).id << " " << g.vertex_label(v) << "\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        out << "e " << g.edge(e).id << " " << g.edge_label(e);
        for (int v : g.edge(e).members) out << " " << g.vertex(v).id;
        out << "\n";
    }
}

inline std::string serialize_hypergraph(const Hypergraph& g,
                                        const std::vector<std::string>& extra_comments = {}) {
    std::ostringstream out;
    serialize_hypergraph(out, g, extra_comments);
    return out.str();
}

}  // namespace hyperlet
