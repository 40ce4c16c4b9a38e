#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraphlet.hpp"

namespace hyperlet {

/// Exact rational with small operands; used for cycle-index coefficients so
/// labeled-structure counts stay exact.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Root-fixing automorphism of a hypergraphlet: a vertex permutation that
/// maps the labeled hyperedge family onto itself, with the edge permutation
/// it induces.
struct Automorphism {
    std::array<std::uint8_t, 4> vertex_perm{};  // new index of old vertex i
    std::vector<int> edge_perm;                 // new position of old edge k
};

struct AutomorphismGroup {
    int order = 1;       // number of vertices n
    int edge_count = 0;  // number of hyperedges m
    std::vector<Automorphism> elements;

    int size() const { return static_cast<int>(elements.size()); }
};

/// Brute force over the <= 3! root-fixing vertex permutations: keep those
/// preserving the (member set, label) family; the induced edge permutation is
/// unique because member sets are distinct.
inline AutomorphismGroup automorphism_group(const Hypergraphlet& h) {
    AutomorphismGroup group;
    group.order = h.order;
    group.edge_count = static_cast<int>(h.edges.size());
    for (const auto& perm : detail::root_fixing_permutations(h.order)) {
        std::vector<int> eperm(h.edges.size(), -1);
        bool ok = true;
        for (std::size_t k = 0; k < h.edges.size() && ok; ++k) {
            std::uint8_t mapped = detail::permute_mask(h.edges[k].members, perm);
            ok = false;
            for (std::size_t j = 0; j < h.edges.size(); ++j) {
                if (h.edges[j].members == mapped && h.edges[j].label == h.edges[k].label) {
                    eperm[k] = static_cast<int>(j);
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) continue;
        bool labels_ok = true;
        for (int i = 0; i < h.order; ++i)
            if (h.vertex_labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] !=
                h.vertex_labels[static_cast<std::size_t>(i)]) {
                labels_ok = false;
                break;
            }
        if (!labels_ok) continue;
        group.elements.push_back({perm, std::move(eperm)});
    }
    return group;
}

namespace detail {

/// Number of cycles in each length for a permutation given as new-index-of-i.
template <class Perm>
std::vector<int> cycle_lengths(const Perm& perm, int n) {
    std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0;
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            j = static_cast<int>(perm[static_cast<std::size_t>(j)]);
            ++len;
        }
        ++counts[static_cast<std::size_t>(len)];
    }
    return counts;  // counts[k] = number of cycles of length k
}

}  // namespace detail

/// One monomial of a cycle index: coefficient * prod_k s_k^vertex_exp[k-1]
/// * prod_k' t_k'^edge_exp[k'-1] (s over vertex cycles, t over edge cycles).
struct CycleIndexTerm {
    Rational coeff;
    std::vector<int> vertex_exp;  // j_k, k = 1..n
    std::vector<int> edge_exp;    // j'_k, k = 1..m
};

struct CycleIndex {
    int order = 1;
    int edge_count = 0;
    std::vector<CycleIndexTerm> terms;

    /// Substitutes sigma for every s_k and xi for every t_k'.
    Rational evaluate(long long sigma, long long xi) const {
        Rational total(0);
        for (const auto& term : terms) {
            long long value = 1;
            for (std::size_t k = 0; k < term.vertex_exp.size(); ++k)
                for (int r = 0; r < term.vertex_exp[k]; ++r) value *= sigma;
            for (std::size_t k = 0; k < term.edge_exp.size(); ++k)
                for (int r = 0; r < term.edge_exp[k]; ++r) value *= xi;
            total = total + term.coeff * Rational(value);
        }
        return total;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            if (t > 0) out += " + ";
            const auto& term = terms[t];
            std::string mono;
            for (std::size_t k = 0; k < term.vertex_exp.size(); ++k) {
                if (term.vertex_exp[k] == 0) continue;
                mono += (mono.empty() ? "" : "*");
                mono += "s" + std::to_string(k + 1);
                if (term.vertex_exp[k] > 1) mono += "^" + std::to_string(term.vertex_exp[k]);
            }
            for (std::size_t k = 0; k < term.edge_exp.size(); ++k) {
                if (term.edge_exp[k] == 0) continue;
                mono += (mono.empty() ? "" : "*");
                mono += "t" + std::to_string(k + 1);
                if (term.edge_exp[k] > 1) mono += "^" + std::to_string(term.edge_exp[k]);
            }
            if (mono.empty()) mono = "1";
            out += term.coeff == Rational(1) ? mono : term.coeff.to_string() + "*" + mono;
        }
        return out.empty() ? "0" : out;
    }
};

/// Cycle index of an automorphism group: one monomial per element with
/// exponents given by its vertex- and edge-cycle counts, coefficient 1/|A|;
/// equal monomials are merged.
inline CycleIndex cycle_index(const AutomorphismGroup& group) {
    CycleIndex z;
    z.order = group.order;
    z.edge_count = group.edge_count;
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> merged;
    for (const auto& alpha : group.elements) {
        auto vcounts = detail::cycle_lengths(alpha.vertex_perm, group.order);
        auto ecounts = detail::cycle_lengths(alpha.edge_perm, group.edge_count);
        std::vector<int> vexp(vcounts.begin() + 1, vcounts.end());
        std::vector<int> eexp(ecounts.begin() + 1, ecounts.end());
        ++merged[{std::move(vexp), std::move(eexp)}];
    }
    for (const auto& [key, count] : merged)
        z.terms.push_back({Rational(count, group.size()), key.first, key.second});
    return z;
}

/// m_i(n, Sigma, Xi): number of non-isomorphic fully labeled hypergraphlets
/// over a base structure, by Polya substitution into its cycle index.
inline long long count_labeled(const Hypergraphlet& base, int sigma_size, int xi_size) {
    if (sigma_size < 1 || xi_size < 1) throw data_error("alphabet sizes must be >= 1");
    AutomorphismGroup group = automorphism_group(base);
    long long total = 0;
    for (const auto& alpha : group.elements) {
        auto vcounts = detail::cycle_lengths(alpha.vertex_perm, group.order);
        auto ecounts = detail::cycle_lengths(alpha.edge_perm, group.edge_count);
        long long vcycles = 0, ecycles = 0;
        for (std::size_t k = 1; k < vcounts.size(); ++k) vcycles += vcounts[k];
        for (std::size_t k = 1; k < ecounts.size(); ++k) ecycles += ecounts[k];
        long long value = 1;
        for (long long r = 0; r < vcycles; ++r) value *= sigma_size;
        for (long long r = 0; r < ecycles; ++r) value *= xi_size;
        total += value;
    }
    if (total % group.size() != 0) throw numeric_error("cycle index sum not divisible by group order");
    return total / group.size();
}

/// Equivalence class of base hypergraphlets with identical labeled counts for
/// every pair of alphabet sizes.
struct EquivalenceClass {
    int representative = 0;     // base index (0-based into enumerate_base)
    std::vector<int> members;   // base indices, ascending
    int group_size = 1;         // |A| of each member
    CycleIndex index;           // representative's cycle index

    long long evaluate(int sigma_size, int xi_size) const {
        Rational r = index.evaluate(sigma_size, xi_size);
        if (r.den != 1) throw numeric_error("labeled count is not integral");
        return r.num;
    }
};

struct EquivalenceClassTable {
    int order = 1;
    bool fully_labeled = true;
    std::vector<EquivalenceClass> classes;

    std::vector<int> class_sizes() const {
        std::vector<int> sizes;
        sizes.reserve(classes.size());
        for (const auto& c : classes) sizes.push_back(static_cast<int>(c.members.size()));
        return sizes;
    }
};

/// Partitions the base hypergraphlets of one order into equivalence classes.
///
/// Two bases are equivalent iff their evaluation polynomials m(sigma, xi) are
/// identical; the polynomial is keyed exactly by (vertex-cycle count,
/// edge-cycle count) -> rational coefficient. For the vertex-labeled variant
/// (fully_labeled = false) edge cycles are projected out, which is the xi = 1
/// restriction. Classes are ordered by ascending group size, then by
/// descending count at a fixed probe size, then by smallest member index.
inline EquivalenceClassTable partition_classes(int n, bool fully_labeled) {
    const auto& bases = enumerate_base(n);
    EquivalenceClassTable table;
    table.order = n;
    table.fully_labeled = fully_labeled;

    std::map<std::map<std::pair<long long, long long>, Rational>, std::vector<int>> buckets;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        AutomorphismGroup group = automorphism_group(bases[i]);
        std::map<std::pair<long long, long long>, Rational> poly;
        for (const auto& alpha : group.elements) {
            auto vcounts = detail::cycle_lengths(alpha.vertex_perm, group.order);
            auto ecounts = detail::cycle_lengths(alpha.edge_perm, group.edge_count);
            long long vcycles = 0, ecycles = 0;
            for (std::size_t k = 1; k < vcounts.size(); ++k) vcycles += vcounts[k];
            for (std::size_t k = 1; k < ecounts.size(); ++k) ecycles += ecounts[k];
            auto key = std::make_pair(vcycles, fully_labeled ? ecycles : 0);
            poly[key] = poly.count(key) ? poly[key] + Rational(1, group.size()) : Rational(1, group.size());
        }
        buckets[std::move(poly)].push_back(static_cast<int>(i));
    }

    const int probe_sigma = 3;
    const int probe_xi = fully_labeled ? 2 : 1;
    for (auto& [poly, members] : buckets) {
        (void)poly;
        EquivalenceClass cls;
        cls.representative = members.front();
        cls.members = members;
        AutomorphismGroup group = automorphism_group(bases[static_cast<std::size_t>(cls.representative)]);
        cls.group_size = group.size();
        cls.index = cycle_index(group);
        table.classes.push_back(std::move(cls));
    }
    std::sort(table.classes.begin(), table.classes.end(),
              [&](const EquivalenceClass& a, const EquivalenceClass& b) {
                  if (a.group_size != b.group_size) return a.group_size < b.group_size;
                  long long ma = a.evaluate(probe_sigma, probe_xi);
                  long long mb = b.evaluate(probe_sigma, probe_xi);
                  if (ma != mb) return ma > mb;
                  return a.members.front() < b.members.front();
              });
    return table;
}

/// kappa(n, Sigma, Xi): total number of distinct fully labeled
/// n-hypergraphlets, summed directly over base structures.
inline long long kappa(int n, int sigma_size, int xi_size) {
    long long total = 0;
    for (const auto& base : enumerate_base(n)) total += count_labeled(base, sigma_size, xi_size);
    return total;
}

/// Same total via the equivalence-class decomposition; kept as an
/// independently-routed cross-check of partition_classes.
inline long long kappa_from_classes(int n, int sigma_size, int xi_size) {
    auto table = partition_classes(n, true);
    long long total = 0;
    for (const auto& cls : table.classes)
        total += cls.evaluate(sigma_size, xi_size) * static_cast<long long>(cls.members.size());
    return total;
}

}  // namespace hyperlet
