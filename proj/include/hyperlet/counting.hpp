#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/hypergraphlet.hpp"

namespace hyperlet {

/// Sparse hypergraphlet count vector: canonical code -> weighted count.
/// Plain counts are exact integers; edit-distance smoothing may introduce
/// non-integer pseudocount weights. Zero entries are absent.
struct FeatureVector {
    std::map<CanonicalCode, double> entries;

    double at(const CanonicalCode& code) const {
        auto it = entries.find(code);
        return it == entries.end() ? 0.0 : it->second;
    }

    void add(const CanonicalCode& code, double weight) {
        if (weight == 0.0) return;
        entries[code] += weight;
    }

    /// Sum of counts restricted to one order.
    double order_total(int order) const {
        double total = 0.0;
        for (const auto& [code, count] : entries)
            if (code.order() == order) total += count;
        return total;
    }

    bool operator==(const FeatureVector& other) const { return entries == other.entries; }
};

/// Sparse inner product over codes of order <= max_order (codes sort with the
/// order byte first, so both maps are walked in lockstep).
inline double feature_dot(const FeatureVector& a, const FeatureVector& b, int max_order = kMaxOrder) {
    double sum = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() && ib != b.entries.end()) {
        if (ia->first.order() > max_order || ib->first.order() > max_order) break;
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            sum += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

struct CountStats {
    std::uint64_t label_conflicts = 0;    // duplicate member sets with differing labels
    std::uint64_t singletons_ignored = 0; // cardinality-1 host edges skipped
};

namespace detail {

struct DedupedEdge {
    std::vector<int> members;  // sorted vertex indices (host graph numbering)
    int label;
};

/// Enumerates connected vertex subsets containing a fixed root, each exactly
/// once, by growing an extension frontier of exclusive neighbors (the ESU
/// scheme with the root pinned instead of an index ordering).
class ConnectedSubsetEnumerator {
public:
    ConnectedSubsetEnumerator(const std::vector<std::vector<int>>& adjacency, int max_size)
        : adjacency_(adjacency), max_size_(max_size),
          visited_(adjacency.size(), 0) {}

    template <class Fn>
    void run(int root, Fn&& emit) {
        subset_.clear();
        subset_.push_back(root);
        visited_[static_cast<std::size_t>(root)] = 1;
        std::vector<int> ext;
        for (int u : adjacency_[static_cast<std::size_t>(root)])
            if (!visited_[static_cast<std::size_t>(u)]) {
                visited_[static_cast<std::size_t>(u)] = 1;
                ext.push_back(u);
            }
        extend(ext, emit);
        for (int u : ext) visited_[static_cast<std::size_t>(u)] = 0;
        visited_[static_cast<std::size_t>(root)] = 0;
        subset_.clear();
    }

private:
    template <class Fn>
    void extend(const std::vector<int>& ext, Fn&& emit) {
        emit(subset_);
        if (static_cast<int>(subset_.size()) == max_size_) return;
        for (std::size_t pos = 0; pos < ext.size(); ++pos) {
            int w = ext[pos];
            subset_.push_back(w);
            // Successors may extend through the tail of the frontier plus w's
            // exclusive neighbors (not in the subset, not adjacent to it).
            std::vector<int> next(ext.begin() + static_cast<std::ptrdiff_t>(pos) + 1, ext.end());
            std::vector<int> newly;
            for (int u : adjacency_[static_cast<std::size_t>(w)])
                if (!visited_[static_cast<std::size_t>(u)]) {
                    visited_[static_cast<std::size_t>(u)] = 1;
                    newly.push_back(u);
                    next.push_back(u);
                }
            extend(next, emit);
            for (int u : newly) visited_[static_cast<std::size_t>(u)] = 0;
            subset_.pop_back();
        }
    }

    const std::vector<std::vector<int>>& adjacency_;
    int max_size_;
    std::vector<char> visited_;
    std::vector<int> subset_;
};

}  // namespace detail

/// Counts rooted labeled hypergraphlets of orders 1..max_order at a vertex.
///
/// One occurrence per connected vertex subset S containing the root whose
/// induced sub-hypergraph — the host edges with all members inside S,
/// cardinality >= 2, deduplicated by (member set, label) — is connected.
/// Host edges only partially inside S contribute nothing; cardinality-1 host
/// edges are ignored. Identical member sets with conflicting labels collapse
/// to the first-listed edge and bump stats->label_conflicts.
inline FeatureVector count_hypergraphlets(const Hypergraph& g, std::string_view root_id, int max_order,
                                          CountStats* stats = nullptr) {
    if (max_order < 1 || max_order > kMaxOrder) throw data_error("counting order must be in 1..4");
    if (g.sigma().size() > 255 || g.xi().size() > 255)
        throw data_error("alphabets larger than 255 symbols are not supported by the code layout");
    int root = g.require_vertex(root_id);
    CountStats local;
    CountStats& st = stats != nullptr ? *stats : local;

    // Restrict to the neighborhood of radius max_order-1: any connected subset
    // of size <= max_order lies inside it. Edges must sit fully inside the kept
    // set; partially-kept edges cannot be induced by any S and are dropped.
    auto dist = distances_from(g, root);
    std::vector<char> keep(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        keep[static_cast<std::size_t>(v)] =
            dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] < max_order;

    // Deduplicate the kept edge family by member set (first-listed label wins).
    std::map<std::vector<int>, int> dedup;  // member set -> label
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& members = g.edge(e).members;
        if (members.size() < 2) {
            ++st.singletons_ignored;
            continue;
        }
        if (static_cast<int>(members.size()) > max_order) continue;
        bool inside = true;
        for (int v : members)
            if (!keep[static_cast<std::size_t>(v)]) {
                inside = false;
                break;
            }
        if (!inside) continue;
        auto [it, fresh] = dedup.emplace(members, g.edge(e).label);
        if (!fresh && it->second != g.edge(e).label) ++st.label_conflicts;
    }

    std::vector<detail::DedupedEdge> edges;
    edges.reserve(dedup.size());
    for (auto& [members, label] : dedup) edges.push_back({members, label});

    // 2-section adjacency and per-vertex incidence over the deduped family.
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(g.vertex_count()));
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        const auto& m = edges[idx].members;
        for (std::size_t i = 0; i < m.size(); ++i) {
            incident[static_cast<std::size_t>(m[i])].push_back(static_cast<int>(idx));
            for (std::size_t j = i + 1; j < m.size(); ++j) {
                adjacency[static_cast<std::size_t>(m[i])].push_back(m[j]);
                adjacency[static_cast<std::size_t>(m[j])].push_back(m[i]);
            }
        }
    }
    for (auto& nbrs : adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }

    FeatureVector fv;
    detail::ConnectedSubsetEnumerator enumerator(adjacency, max_order);
    enumerator.run(root, [&](const std::vector<int>& subset) {
        const int n = static_cast<int>(subset.size());
        // Position of each host vertex inside the subset; root stays at 0.
        std::array<int, 4> verts{};
        for (int i = 0; i < n; ++i) verts[static_cast<std::size_t>(i)] = subset[static_cast<std::size_t>(i)];

        Hypergraphlet h;
        h.order = n;
        for (int i = 0; i < n; ++i)
            h.vertex_labels[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(g.vertex(verts[static_cast<std::size_t>(i)]).label);

        // Induced deduped edges: all members inside the subset.
        std::array<int, 4> comp{0, 1, 2, 3};  // union-find over subset positions
        auto find = [&](int x) {
            while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)];
            return x;
        };
        std::vector<int> taken;  // dedup edge ids already added (subset is tiny)
        for (int i = 0; i < n; ++i) {
            for (int eidx : incident[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])]) {
                if (std::find(taken.begin(), taken.end(), eidx) != taken.end()) continue;
                const auto& m = edges[static_cast<std::size_t>(eidx)].members;
                std::uint8_t mask = 0;
                bool inside = true;
                for (int v : m) {
                    int pos = -1;
                    for (int p = 0; p < n; ++p)
                        if (verts[static_cast<std::size_t>(p)] == v) {
                            pos = p;
                            break;
                        }
                    if (pos < 0) {
                        inside = false;
                        break;
                    }
                    mask = static_cast<std::uint8_t>(mask | (1u << pos));
                }
                if (!inside) continue;
                taken.push_back(eidx);
                h.edges.push_back({mask, static_cast<std::uint8_t>(edges[static_cast<std::size_t>(eidx)].label)});
                int first = std::countr_zero(static_cast<unsigned>(mask));
                for (int b = first + 1; b < n; ++b)
                    if (mask & (1u << b)) comp[static_cast<std::size_t>(find(b))] = find(first);
            }
        }

        if (n > 1) {
            int r = find(0);
            for (int i = 1; i < n; ++i)
                if (find(i) != r) return;  // induced sub-hypergraph disconnected
        }
        h.sort_edges();
        fv.add(canonicalize(h), 1.0);
    });
    return fv;
}

// ---------------------------------------------------------------------------
// Feature file format
//
//   # hyperlet-features v1
//   # order 4
//   # tau 0
//   # ops vl,hl,hi
//   # sigma A B C
//   # xi X Y
//   <root-id> <code-hex>:<count> <code-hex>:<count> ...
// ---------------------------------------------------------------------------

struct FeatureMeta {
    int order = kMaxOrder;
    int tau = 0;
    unsigned ops = 7;  // see edit.hpp for the flag values
    Alphabet sigma;
    Alphabet xi;
};

inline std::string format_count(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

inline std::string ops_to_string(unsigned ops) {
    std::string s;
    if (ops & 1u) s += "vl,";
    if (ops & 2u) s += "hl,";
    if (ops & 4u) s += "hi,";
    if (!s.empty()) s.pop_back();
    return s.empty() ? "none" : s;
}

inline unsigned ops_from_string(std::string_view text) {
    if (text == "none" || text.empty()) return 0;
    unsigned ops = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start);
        if (part == "vl") ops |= 1u;
        else if (part == "hl") ops |= 2u;
        else if (part == "hi") ops |= 4u;
        else if (!part.empty()) throw data_error("unknown edit op '" + std::string(part) + "'");
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ops;
}

inline void write_features(std::ostream& out, const std::vector<std::pair<std::string, FeatureVector>>& features,
                           const FeatureMeta& meta) {
    out << "# hyperlet-features v1\n";
    out << "# order " << meta.order << "\n";
    out << "# tau " << meta.tau << "\n";
    out << "# ops " << ops_to_string(meta.ops) << "\n";
    out << "# sigma";
    for (const auto& s : meta.sigma.symbols()) out << " " << s;
    out << "\n# xi";
    for (const auto& s : meta.xi.symbols()) out << " " << s;
    out << "\n";
    for (const auto& [id, fv] : features) {
        out << id;
        for (const auto& [code, count] : fv.entries) out << " " << code.to_hex() << ":" << format_count(count);
        out << "\n";
    }
}

inline std::pair<std::vector<std::pair<std::string, FeatureVector>>, FeatureMeta> read_features(std::istream& in) {
    std::vector<std::pair<std::string, FeatureVector>> features;
    FeatureMeta meta;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::split_tokens(line);
        if (tok.empty()) continue;
        if (tok[0][0] == '#') {
            if (tok.size() >= 2) {
                if (tok[1] == "order" && tok.size() >= 3) meta.order = std::stoi(tok[2]);
                else if (tok[1] == "tau" && tok.size() >= 3) meta.tau = std::stoi(tok[2]);
                else if (tok[1] == "ops" && tok.size() >= 3) meta.ops = ops_from_string(tok[2]);
                else if (tok[1] == "sigma")
                    for (std::size_t i = 2; i < tok.size(); ++i) meta.sigma.add(tok[i]);
                else if (tok[1] == "xi")
                    for (std::size_t i = 2; i < tok.size(); ++i) meta.xi.add(tok[i]);
            }
            continue;
        }
        FeatureVector fv;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            std::size_t colon = tok[i].rfind(':');
            if (colon == std::string::npos) throw parse_error(lineno, "feature entry missing ':'");
            CanonicalCode code = CanonicalCode::from_hex(std::string_view(tok[i]).substr(0, colon));
            double count = std::stod(tok[i].substr(colon + 1));
            fv.add(code, count);
        }
        features.emplace_back(tok[0], std::move(fv));
    }
    return {std::move(features), std::move(meta)};
}

}  // namespace hyperlet
