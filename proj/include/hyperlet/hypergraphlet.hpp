#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraph.hpp"

namespace hyperlet {

/// Maximum hypergraphlet order supported by the canonical code layout (the
/// member bitmask is one byte and growth beyond order 4 is combinatorial).
inline constexpr int kMaxOrder = 4;

/// Small, simple, connected, rooted hypergraph used as a counting probe.
/// Vertex 0 is the root. Labels are indices into external alphabets; base
/// hypergraphlets are the all-zero-label case. Hyperedges are member bitmasks
/// over vertex indices with cardinality >= 2, no two sharing a member set.
struct Hypergraphlet {
    struct Edge {
        std::uint8_t members = 0;  // bit i set <=> vertex i is a member
        std::uint8_t label = 0;

        friend bool operator<(const Edge& a, const Edge& b) {
            return a.members != b.members ? a.members < b.members : a.label < b.label;
        }
        friend bool operator==(const Edge& a, const Edge& b) {
            return a.members == b.members && a.label == b.label;
        }
    };

    int order = 1;
    std::array<std::uint8_t, 4> vertex_labels{};  // [0] is the root
    std::vector<Edge> edges;                      // kept sorted

    void sort_edges() { std::sort(edges.begin(), edges.end()); }

    bool has_member_set(std::uint8_t mask) const {
        return std::any_of(edges.begin(), edges.end(), [mask](const Edge& e) { return e.members == mask; });
    }

    /// Connectivity over vertices 0..order-1 through the edge masks.
    bool connected() const {
        if (order == 1) return true;
        std::array<int, 4> parent{0, 1, 2, 3};
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
            return x;
        };
        for (const Edge& e : edges) {
            int first = std::countr_zero(static_cast<unsigned>(e.members));
            for (int v = first + 1; v < order; ++v)
                if (e.members & (1u << v)) parent[static_cast<std::size_t>(find(v))] = find(first);
        }
        int root = find(0);
        for (int v = 1; v < order; ++v)
            if (find(v) != root) return false;
        return true;
    }

    /// Structural validity: order in range, edge masks inside the vertex set
    /// with cardinality >= 2, distinct member sets, connected.
    bool valid() const {
        if (order < 1 || order > kMaxOrder) return false;
        std::uint8_t full = static_cast<std::uint8_t>((1u << order) - 1);
        std::uint8_t seen_masks[1 << 4] = {};
        for (const Edge& e : edges) {
            if ((e.members & ~full) != 0) return false;
            if (std::popcount(static_cast<unsigned>(e.members)) < 2) return false;
            if (seen_masks[e.members]++) return false;
        }
        return connected();
    }
};

/// Total-order key identifying a rooted labeled hypergraphlet up to root- and
/// label-preserving isomorphism.
///
/// Byte layout: [order][root label][non-root labels...][(member mask, edge
/// label) pairs sorted ascending]. The code is the lexicographic minimum of
/// this encoding over all permutations of the non-root vertex indices.
struct CanonicalCode {
    std::string bytes;

    int order() const { return bytes.empty() ? 0 : static_cast<int>(static_cast<unsigned char>(bytes[0])); }

    auto operator<=>(const CanonicalCode&) const = default;

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        out.reserve(bytes.size() * 2);
        for (unsigned char c : bytes) {
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 0xF]);
        }
        return out;
    }

    static CanonicalCode from_hex(std::string_view hex) {
        if (hex.size() % 2 != 0) throw data_error("canonical code hex has odd length");
        auto nibble = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            throw data_error("invalid hex digit in canonical code");
        };
        CanonicalCode code;
        code.bytes.reserve(hex.size() / 2);
        for (std::size_t i = 0; i < hex.size(); i += 2)
            code.bytes.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
        return code;
    }
};

struct CanonicalCodeHash {
    std::size_t operator()(const CanonicalCode& c) const { return std::hash<std::string>{}(c.bytes); }
};

namespace detail {

/// Permutations of the non-root indices for each order; perm[i] is the new
/// index of old vertex i (root pinned at 0).
inline const std::vector<std::array<std::uint8_t, 4>>& root_fixing_permutations(int order) {
    static const std::vector<std::array<std::uint8_t, 4>> tables[5] = {
        {},
        {{0, 1, 2, 3}},
        {{0, 1, 2, 3}},
        {{0, 1, 2, 3}, {0, 2, 1, 3}},
        {{0, 1, 2, 3},
         {0, 1, 3, 2},
         {0, 2, 1, 3},
         {0, 2, 3, 1},
         {0, 3, 1, 2},
         {0, 3, 2, 1}},
    };
    if (order < 1 || order > kMaxOrder) throw data_error("hypergraphlet order must be in 1..4");
    return tables[order];
}

inline std::uint8_t permute_mask(std::uint8_t mask, const std::array<std::uint8_t, 4>& perm) {
    std::uint8_t out = 0;
    for (int b = 0; b < 4; ++b)
        if (mask & (1u << b)) out = static_cast<std::uint8_t>(out | (1u << perm[static_cast<std::size_t>(b)]));
    return out;
}

inline std::string encode_permuted(const Hypergraphlet& h, const std::array<std::uint8_t, 4>& perm) {
    std::string out;
    out.reserve(1 + static_cast<std::size_t>(h.order) + 2 * h.edges.size());
    out.push_back(static_cast<char>(h.order));
    std::array<std::uint8_t, 4> labels{};
    for (int i = 0; i < h.order; ++i)
        labels[perm[static_cast<std::size_t>(i)]] = h.vertex_labels[static_cast<std::size_t>(i)];
    for (int i = 0; i < h.order; ++i) out.push_back(static_cast<char>(labels[static_cast<std::size_t>(i)]));
    std::vector<Hypergraphlet::Edge> edges;
    edges.reserve(h.edges.size());
    for (const auto& e : h.edges) edges.push_back({permute_mask(e.members, perm), e.label});
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
        out.push_back(static_cast<char>(e.members));
        out.push_back(static_cast<char>(e.label));
    }
    return out;
}

}  // namespace detail

/// Minimal encoding over all root-fixing relabelings of the vertex indices.
inline CanonicalCode canonicalize(const Hypergraphlet& h) {
    if (h.order < 1 || h.order > kMaxOrder) throw data_error("hypergraphlet order must be in 1..4");
    const auto& perms = detail::root_fixing_permutations(h.order);
    std::string best = detail::encode_permuted(h, perms[0]);
    for (std::size_t p = 1; p < perms.size(); ++p) {
        std::string cand = detail::encode_permuted(h, perms[p]);
        if (cand < best) best = std::move(cand);
    }
    return CanonicalCode{std::move(best)};
}

/// Rebuilds the canonical-form structure from a code.
inline Hypergraphlet decode(const CanonicalCode& code) {
    const std::string& b = code.bytes;
    if (b.empty()) throw data_error("empty canonical code");
    Hypergraphlet h;
    h.order = static_cast<unsigned char>(b[0]);
    if (h.order < 1 || h.order > kMaxOrder) throw data_error("canonical code order out of range");
    std::size_t need = 1 + static_cast<std::size_t>(h.order);
    if (b.size() < need || (b.size() - need) % 2 != 0) throw data_error("malformed canonical code");
    for (int i = 0; i < h.order; ++i)
        h.vertex_labels[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(static_cast<unsigned char>(b[1 + static_cast<std::size_t>(i)]));
    for (std::size_t i = need; i < b.size(); i += 2)
        h.edges.push_back({static_cast<std::uint8_t>(static_cast<unsigned char>(b[i])),
                           static_cast<std::uint8_t>(static_cast<unsigned char>(b[i + 1]))});
    if (!h.valid()) throw data_error("canonical code does not decode to a valid hypergraphlet");
    return h;
}

/// All base (unit-alphabet) hypergraphlets of the given order, pairwise
/// non-isomorphic, in canonical-code order. Index i in the result is the
/// stable base index n_{i+1}.
inline const std::vector<Hypergraphlet>& enumerate_base(int order) {
    if (order < 1 || order > kMaxOrder) throw data_error("base hypergraphlet order must be in 1..4");
    static const std::array<std::vector<Hypergraphlet>, kMaxOrder + 1> cache = [] {
        std::array<std::vector<Hypergraphlet>, kMaxOrder + 1> all;
        for (int n = 1; n <= kMaxOrder; ++n) {
            std::vector<std::uint8_t> masks;
            for (unsigned m = 0; m < (1u << n); ++m)
                if (std::popcount(m) >= 2) masks.push_back(static_cast<std::uint8_t>(m));
            std::set<std::string> seen;
            for (unsigned family = 0; family < (1u << masks.size()); ++family) {
                Hypergraphlet h;
                h.order = n;
                for (std::size_t i = 0; i < masks.size(); ++i)
                    if (family & (1u << i)) h.edges.push_back({masks[i], 0});
                if (!h.connected()) continue;
                seen.insert(canonicalize(h).bytes);
            }
            for (const auto& bytes : seen) all[static_cast<std::size_t>(n)].push_back(decode(CanonicalCode{bytes}));
        }
        return all;
    }();
    return cache[static_cast<std::size_t>(order)];
}

/// Human-readable structure description; used for feature sidecar files.
/// When alphabets are given, label indices are rendered as symbols.
inline std::string describe(const CanonicalCode& code, const Alphabet* sigma = nullptr,
                            const Alphabet* xi = nullptr) {
    Hypergraphlet h = decode(code);
    auto vsym = [&](int idx) {
        if (sigma != nullptr && idx < sigma->size()) return sigma->symbol(idx);
        return std::to_string(idx);
    };
    auto esym = [&](int idx) {
        if (xi != nullptr && idx < xi->size()) return xi->symbol(idx);
        return std::to_string(idx);
    };
    std::string out = "n=" + std::to_string(h.order);
    for (int i = 0; i < h.order; ++i)
        out += " v" + std::to_string(i) + "=" + vsym(h.vertex_labels[static_cast<std::size_t>(i)]);
    for (const auto& e : h.edges) {
        out += " e={";
        bool first = true;
        for (int b = 0; b < h.order; ++b)
            if (e.members & (1u << b)) {
                if (!first) out += ",";
                out += "v" + std::to_string(b);
                first = false;
            }
        out += "}:" + esym(e.label);
    }
    return out;
}

}  // namespace hyperlet
