#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperlet/counting.hpp"
#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraphlet.hpp"

namespace hyperlet {

/// Unit-cost edit operations on hypergraphlets.
enum EditOps : unsigned {
    kVertexLabelSub = 1u,  // substitute one vertex label
    kEdgeLabelSub = 2u,    // substitute one hyperedge label
    kEdgeIndel = 4u,       // insert or delete one hyperedge
    kAllEditOps = 7u,
};

namespace detail {

/// All valid hypergraphlets one edit away. Endpoints of every step must be
/// valid (same order, connected, simple); deletions that disconnect the
/// structure are discarded, insertions draw member sets of cardinality >= 2
/// not already present, with every edge label.
inline std::vector<Hypergraphlet> single_edits(const Hypergraphlet& h, unsigned ops, int sigma_size,
                                               int xi_size) {
    std::vector<Hypergraphlet> out;
    if (ops & kVertexLabelSub) {
        for (int i = 0; i < h.order; ++i) {
            for (int s = 0; s < sigma_size; ++s) {
                if (s == h.vertex_labels[static_cast<std::size_t>(i)]) continue;
                Hypergraphlet next = h;
                next.vertex_labels[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(s);
                out.push_back(std::move(next));
            }
        }
    }
    if (ops & kEdgeLabelSub) {
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
            for (int x = 0; x < xi_size; ++x) {
                if (x == h.edges[e].label) continue;
                Hypergraphlet next = h;
                next.edges[e].label = static_cast<std::uint8_t>(x);
                next.sort_edges();
                out.push_back(std::move(next));
            }
        }
    }
    if (ops & kEdgeIndel) {
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
            Hypergraphlet next = h;
            next.edges.erase(next.edges.begin() + static_cast<std::ptrdiff_t>(e));
            if (next.connected()) out.push_back(std::move(next));
        }
        std::uint8_t full = static_cast<std::uint8_t>((1u << h.order) - 1);
        for (std::uint8_t mask = 0; mask <= full; ++mask) {
            if (std::popcount(static_cast<unsigned>(mask)) < 2) continue;
            if ((mask & ~full) != 0) continue;
            if (h.has_member_set(mask)) continue;
            for (int x = 0; x < xi_size; ++x) {
                Hypergraphlet next = h;
                next.edges.push_back({mask, static_cast<std::uint8_t>(x)});
                next.sort_edges();
                out.push_back(std::move(next));
            }
        }
    }
    return out;
}

}  // namespace detail

/// All canonical codes reachable from `code` by an edit path of cost <= tau
/// using the allowed operations, each with its minimal cost. Includes the
/// input at cost 0. Validity (connected, simple, same order) is enforced at
/// every step of the path.
inline std::vector<std::pair<CanonicalCode, int>> edit_neighborhood(const CanonicalCode& code, int tau,
                                                                    unsigned ops, int sigma_size,
                                                                    int xi_size) {
    if (tau < 0) throw data_error("edit radius must be nonnegative");
    if (sigma_size < 1 || xi_size < 1) throw data_error("alphabet sizes must be >= 1");
    Hypergraphlet h = decode(code);
    for (int i = 0; i < h.order; ++i)
        if (h.vertex_labels[static_cast<std::size_t>(i)] >= sigma_size)
            throw data_error("vertex label in code exceeds sigma alphabet");
    for (const auto& e : h.edges)
        if (e.label >= xi_size) throw data_error("edge label in code exceeds xi alphabet");

    std::unordered_map<CanonicalCode, int, CanonicalCodeHash> cost;
    cost.emplace(code, 0);
    std::vector<CanonicalCode> frontier{code};
    for (int level = 1; level <= tau && !frontier.empty(); ++level) {
        std::vector<CanonicalCode> next_frontier;
        for (const auto& current : frontier) {
            for (const auto& neighbor : detail::single_edits(decode(current), ops, sigma_size, xi_size)) {
                CanonicalCode ncode = canonicalize(neighbor);
                if (cost.emplace(ncode, level).second) next_frontier.push_back(std::move(ncode));
            }
        }
        frontier = std::move(next_frontier);
    }

    std::vector<std::pair<CanonicalCode, int>> out(cost.begin(), cost.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Weight function c(destination, source) for pseudocounts; defaults to 1.
using EditWeightFn = std::function<double(const CanonicalCode&, const CanonicalCode&)>;

/// Edit-distance smoothing: scatters each observed count to every code in its
/// edit neighborhood. Unit costs make neighborhood membership symmetric, so
/// the scatter is equivalent to gathering over each destination's
/// neighborhood. Neighborhoods are memoized behind a mutex so a smoother can
/// be shared across worker threads.
class EditSmoother {
public:
    EditSmoother(int tau, unsigned ops, int sigma_size, int xi_size)
        : tau_(tau), ops_(ops), sigma_size_(sigma_size), xi_size_(xi_size) {}

    int tau() const { return tau_; }
    unsigned ops() const { return ops_; }

    using Neighborhood = std::vector<std::pair<CanonicalCode, int>>;

    std::shared_ptr<const Neighborhood> neighborhood(const CanonicalCode& code) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(code);
            if (it != cache_.end()) return it->second;
        }
        auto computed =
            std::make_shared<const Neighborhood>(edit_neighborhood(code, tau_, ops_, sigma_size_, xi_size_));
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.emplace(code, std::move(computed)).first->second;
    }

    FeatureVector apply(const FeatureVector& fv, const EditWeightFn& weight = {}) const {
        if (tau_ == 0) return fv;
        FeatureVector out;
        for (const auto& [observed, count] : fv.entries) {
            auto nbrs = neighborhood(observed);
            for (const auto& [target, c] : *nbrs) {
                (void)c;
                double w = weight ? weight(target, observed) : 1.0;
                out.add(target, w * count);
            }
        }
        return out;
    }

private:
    int tau_;
    unsigned ops_;
    int sigma_size_;
    int xi_size_;
    mutable std::mutex mu_;
    mutable std::unordered_map<CanonicalCode, std::shared_ptr<const Neighborhood>, CanonicalCodeHash> cache_;
};

/// One-shot smoothing; tau = 0 returns the input unchanged.
inline FeatureVector apply_edit_smoothing(const FeatureVector& fv, int tau, unsigned ops, int sigma_size,
                                          int xi_size, const EditWeightFn& weight = {}) {
    EditSmoother smoother(tau, ops, sigma_size, xi_size);
    return smoother.apply(fv, weight);
}

}  // namespace hyperlet
