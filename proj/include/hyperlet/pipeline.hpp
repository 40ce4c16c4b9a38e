#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlet/baselines.hpp"
#include "hyperlet/counting.hpp"
#include "hyperlet/edit.hpp"
#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/kernel.hpp"
#include "hyperlet/learn.hpp"
#include "hyperlet/parallel.hpp"

namespace hyperlet {

/// Labels file: one "<id> <label>" per line; labels +1/1, -1, 0/?/u
/// (unlabeled). '#' lines are comments.
inline LabeledDataset read_labels(std::istream& in) {
    LabeledDataset d;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::split_tokens(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok.size() != 2) throw parse_error(lineno, "label line must be '<id> <label>'");
        int label = 0;
        if (tok[1] == "+1" || tok[1] == "1") label = 1;
        else if (tok[1] == "-1") label = -1;
        else if (tok[1] == "0" || tok[1] == "?" || tok[1] == "u") label = 0;
        else throw parse_error(lineno, "label must be +1, -1 or 0/?/u");
        d.ids.push_back(tok[0]);
        d.labels.push_back(label);
    }
    return d;
}

inline void write_labels(std::ostream& out, const std::vector<std::pair<std::string, int>>& labels) {
    for (const auto& [id, label] : labels) out << id << " " << (label > 0 ? "+1" : label < 0 ? "-1" : "0") << "\n";
}

/// Hypergraphlet features for a set of root vertices: raw counts then
/// edit-distance smoothing per the kernel configuration. Counting is parallel
/// over roots; the smoother cache is shared.
inline std::vector<std::pair<std::string, FeatureVector>> compute_features(
    const Hypergraph& g, const std::vector<std::string>& roots, const KernelSpec& spec, int threads = 1,
    CountStats* stats = nullptr) {
    std::vector<std::pair<std::string, FeatureVector>> features(roots.size());
    std::vector<CountStats> per_root(roots.size());
    EditSmoother smoother(spec.tau, spec.ops, g.sigma().size(), g.xi().size());
    parallel_for(roots.size(), threads, [&](std::size_t i) {
        FeatureVector raw = count_hypergraphlets(g, roots[i], spec.max_order, &per_root[i]);
        features[i] = {roots[i], spec.tau > 0 ? smoother.apply(raw) : std::move(raw)};
    });
    if (stats != nullptr)
        for (const auto& s : per_root) {
            stats->label_conflicts += s.label_conflicts;
            stats->singletons_ignored += s.singletons_ignored;
        }
    return features;
}

struct CvPipelineConfig {
    KernelSpec kernel;
    int folds = 10;
    std::uint64_t seed = 0;
    bool stratify = true;
    bool pu = false;  // treat unlabeled as negatives
    int threads = 1;
};

struct CvPipelineResult {
    CvResult cv;
    KernelMatrix gram;
    CountStats stats;
    int examples = 0;
};

/// count -> smooth -> gram -> cross_validate over the labeled vertices of g.
/// combine_with, when given, is an extra Gram matrix over the same example
/// ids merged with equal weights before training.
inline CvPipelineResult run_cv_pipeline(const Hypergraph& g, const LabeledDataset& labels,
                                        const CvPipelineConfig& cfg,
                                        const KernelMatrix* combine_with = nullptr) {
    LabeledDataset d = cfg.pu ? pu_relabel(labels) : labels;
    std::vector<std::string> roots;
    for (std::size_t i = 0; i < d.ids.size(); ++i) {
        if (d.labels[i] == 0) continue;
        if (g.vertex_index(d.ids[i]) < 0) throw data_error("label references unknown vertex '" + d.ids[i] + "'");
        roots.push_back(d.ids[i]);
    }
    if (roots.empty()) throw data_error("no labeled vertices");

    CvPipelineResult out;
    auto features = compute_features(g, roots, cfg.kernel, cfg.threads, &out.stats);
    out.gram = gram_matrix(features, cfg.kernel, cfg.threads);
    if (combine_with != nullptr) {
        KernelMatrix aligned = *combine_with;
        if (aligned.ids != out.gram.ids) throw data_error("combine matrix id order mismatch");
        out.gram = combine_kernels({out.gram, aligned}, {0.5, 0.5});
    }
    out.examples = static_cast<int>(roots.size());
    out.cv = cross_validate(out.gram, d, cfg.folds, cfg.seed, cfg.stratify, cfg.threads);
    return out;
}

/// Deterministic JSON summary of a cross-validation run; key order is fixed
/// and numbers serialize shortest-round-trip, so identical seeds and inputs
/// give byte-identical text.
inline nlohmann::ordered_json cv_summary_json(const CvPipelineConfig& cfg, const CvPipelineResult& result,
                                              const std::string& input_name) {
    nlohmann::ordered_json j;
    j["command"] = "cv";
    j["input"] = input_name;
    j["kernel"]["order"] = cfg.kernel.max_order;
    j["kernel"]["tau"] = cfg.kernel.tau;
    j["kernel"]["ops"] = ops_to_string(cfg.kernel.ops);
    j["kernel"]["normalize"] = cfg.kernel.normalize;
    j["folds"] = cfg.folds;
    j["seed"] = cfg.seed;
    j["stratified"] = cfg.stratify;
    j["pu"] = cfg.pu;
    j["examples"] = result.examples;
    j["mean_auc"] = result.cv.mean_auc;
    j["std_auc"] = result.cv.std_auc;
    j["fold_aucs"] = result.cv.fold_aucs;
    return j;
}

/// Per-vertex spectrum Gram over the roots' own sequences (cosine-normalized
/// base kernel), used as the partner in equal-weight kernel combinations.
inline KernelMatrix vertex_spectrum_gram(const std::vector<std::string>& roots,
                                         const std::vector<SequenceRecord>& seqs, int k) {
    std::map<std::string, std::map<std::string, long long>> feats;
    for (const auto& s : seqs) feats[s.id] = spectrum_features(s, k);
    KernelMatrix km;
    km.ids = roots;
    const int n = km.size();
    km.values = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        auto fi = feats.find(roots[static_cast<std::size_t>(i)]);
        if (fi == feats.end()) throw data_error("missing sequence for vertex '" + roots[static_cast<std::size_t>(i)] + "'");
        for (int j = i; j < n; ++j) {
            auto fj = feats.find(roots[static_cast<std::size_t>(j)]);
            if (fj == feats.end()) throw data_error("missing sequence for vertex '" + roots[static_cast<std::size_t>(j)] + "'");
            double v = spectrum_kernel(fi->second, fj->second);
            km.values.at(i, j) = v;
            km.values.at(j, i) = v;
        }
    }
    return km;
}

}  // namespace hyperlet
