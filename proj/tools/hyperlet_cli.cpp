// hyperlet command-line interface: dataset preparation, dual transforms,
// hypergraphlet counting, kernel matrices, baseline kernels, Polya reports
// and cross-validated evaluation, glued together through files.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlet/hyperlet.hpp"
#include "hyperlet/pipeline.hpp"

namespace fs = std::filesystem;
using namespace hyperlet;

namespace {

/// Staged output files: everything is written to <path>.tmp and renamed on
/// commit, so failed runs leave no partial outputs behind.
class OutputSet {
public:
    ~OutputSet() {
        for (const auto& p : pending_) {
            std::error_code ec;
            fs::remove(p.tmp, ec);
        }
    }

    std::ofstream open(const std::string& path) {
        pending_.push_back({path, path + ".tmp"});
        std::ofstream out(pending_.back().tmp, std::ios::binary);
        if (!out) throw data_error("cannot open output file '" + path + "'");
        return out;
    }

    void commit() {
        for (const auto& p : pending_) fs::rename(p.tmp, p.path);
        pending_.clear();
    }

private:
    struct Pending {
        std::string path;
        std::string tmp;
    };
    std::vector<Pending> pending_;
};

Hypergraph load_hgr(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open input file '" + path + "'");
    return parse_hypergraph(in);
}

LabeledDataset load_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open labels file '" + path + "'");
    return read_labels(in);
}

std::vector<SequenceRecord> load_fasta(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open FASTA file '" + path + "'");
    return parse_fasta(in);
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void check_grid(int tau, int order, bool unsafe) {
    if (unsafe) return;
    if (tau != 0 && tau != 1)
        throw CLI::ValidationError("--tau must be 0 or 1 (pass --unsafe-grid to override)");
    if (order != 3 && order != 4)
        throw CLI::ValidationError("--order must be 3 or 4 (pass --unsafe-grid to override)");
}

/// Replaces vertex labels with clustered ones; sigma becomes {L0..L(k-1)}.
Hypergraph relabel_vertices(const Hypergraph& g, const std::map<std::string, std::string>& labels) {
    Hypergraph::Builder b;
    b.name(g.name());
    b.xi(g.xi());
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto it = labels.find(g.vertex(v).id);
        if (it == labels.end()) throw data_error("no cluster label for vertex '" + g.vertex(v).id + "'");
        b.add_vertex(g.vertex(v).id, it->second);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        std::vector<std::string> members;
        for (int v : g.edge(e).members) members.push_back(g.vertex(v).id);
        b.add_edge(g.edge(e).id, g.edge_label(e), members);
    }
    return b.build();
}

std::vector<std::pair<std::string, std::map<std::string, double>>> kmer_vectors(
    const std::vector<SequenceRecord>& seqs, int k) {
    std::vector<std::pair<std::string, std::map<std::string, double>>> out;
    for (const auto& s : seqs) {
        std::map<std::string, double> vec;
        for (const auto& [kmer, count] : spectrum_features(s, k)) vec[kmer] = static_cast<double>(count);
        out.push_back({s.id, std::move(vec)});
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"hypergraphlet kernels on labeled hypergraphs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags win");
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    OutputSet outputs;

    // ---- dual ------------------------------------------------------------
    auto* dual_cmd = app.add_subcommand("dual", "dual hypergraph with self-loop repair");
    struct {
        std::string input, output, extend;
        bool reserve = false;
    } dual_opt;
    dual_cmd->add_option("-i,--input", dual_opt.input, "input HGR")->required();
    dual_cmd->add_option("-o,--output", dual_opt.output, "output HGR")->required();
    dual_cmd->add_option("--extend", dual_opt.extend, "candidate members, comma-separated: build the extended dual");
    dual_cmd->add_flag("--reserve-candidate-label", dual_opt.reserve,
                       "declare the '?' vertex symbol in plain duals");
    dual_cmd->callback([&] {
        Hypergraph g = load_hgr(dual_opt.input);
        DualHypergraph dual = dual_opt.extend.empty()
                                  ? dualize(g, dual_opt.reserve)
                                  : extend_dual(g, LinkQuery::of(split_csv(dual_opt.extend)));
        auto out = outputs.open(dual_opt.output);
        out << serialize_dual(dual);
        if (!dual_opt.extend.empty()) {
            std::cerr << "extended dual: candidate vertex " << dual.candidate_id << ", modified "
                      << split_csv(dual_opt.extend).size() << " hyperedges\n";
        }
        outputs.commit();
    });

    // ---- count -----------------------------------------------------------
    auto* count_cmd = app.add_subcommand("count", "rooted hypergraphlet counts per vertex");
    struct {
        std::string input, output, roots, sidecar, ops = "vl,hl,hi";
        int order = 4, tau = 0;
        bool unsafe = false;
    } count_opt;
    count_cmd->add_option("-i,--input", count_opt.input, "input HGR")->required();
    count_cmd->add_option("-o,--output", count_opt.output, "output feature file")->required();
    count_cmd->add_option("--order", count_opt.order, "maximum hypergraphlet order N (default 4)");
    count_cmd->add_option("--tau", count_opt.tau, "edit-distance radius (default 0)");
    count_cmd->add_option("--ops", count_opt.ops, "edit ops subset of vl,hl,hi");
    count_cmd->add_option("--roots", count_opt.roots, "file with one root id per line (default: all vertices)");
    count_cmd->add_option("--sidecar", count_opt.sidecar, "write code descriptions to this file");
    count_cmd->add_flag("--unsafe-grid", count_opt.unsafe, "allow values outside the default grid");
    count_cmd->callback([&] {
        check_grid(count_opt.tau, count_opt.order, count_opt.unsafe);
        Hypergraph g = load_hgr(count_opt.input);
        std::vector<std::string> roots;
        if (count_opt.roots.empty()) {
            for (int v = 0; v < g.vertex_count(); ++v) roots.push_back(g.vertex(v).id);
        } else {
            std::ifstream in(count_opt.roots);
            if (!in) throw data_error("cannot open roots file '" + count_opt.roots + "'");
            std::string id;
            while (in >> id) roots.push_back(id);
        }
        KernelSpec spec{count_opt.order, count_opt.tau, ops_from_string(count_opt.ops), true};
        CountStats stats;
        auto features = compute_features(g, roots, spec, threads, &stats);
        if (stats.label_conflicts > 0)
            std::cerr << "warning: " << stats.label_conflicts
                      << " duplicate member sets with conflicting labels collapsed\n";
        FeatureMeta meta{count_opt.order, count_opt.tau, spec.ops, g.sigma(), g.xi()};
        auto out = outputs.open(count_opt.output);
        write_features(out, features, meta);
        if (!count_opt.sidecar.empty()) {
            std::set<CanonicalCode> codes;
            for (const auto& [id, fv] : features)
                for (const auto& [code, cnt] : fv.entries) codes.insert(code);
            auto side = outputs.open(count_opt.sidecar);
            for (const auto& code : codes)
                side << code.to_hex() << "\t" << describe(code, &g.sigma(), &g.xi()) << "\n";
        }
        outputs.commit();
    });

    // ---- kernel ----------------------------------------------------------
    auto* kernel_cmd = app.add_subcommand("kernel", "Gram matrix from a feature file");
    struct {
        std::string input, output, svmlight, labels, combine_with, weights = "0.5,0.5";
        int order = 0;
        bool no_normalize = false;
    } kernel_opt;
    kernel_cmd->add_option("-i,--input", kernel_opt.input, "feature file from 'count'")->required();
    kernel_cmd->add_option("-o,--output", kernel_opt.output, "output TSV matrix")->required();
    kernel_cmd->add_option("--order", kernel_opt.order, "restrict to orders <= this (default: the file's order)");
    kernel_cmd->add_flag("--no-normalize", kernel_opt.no_normalize, "skip cosine normalization");
    kernel_cmd->add_option("--svmlight", kernel_opt.svmlight, "also write SVM-light precomputed kernel lines");
    kernel_cmd->add_option("--labels", kernel_opt.labels, "labels file for the SVM-light output");
    kernel_cmd->add_option("--combine-with", kernel_opt.combine_with, "TSV matrix to combine (same ids)");
    kernel_cmd->add_option("--weights", kernel_opt.weights, "combination weights (default 0.5,0.5)");
    kernel_cmd->callback([&] {
        std::ifstream in(kernel_opt.input, std::ios::binary);
        if (!in) throw data_error("cannot open feature file '" + kernel_opt.input + "'");
        auto [features, meta] = read_features(in);
        int order = kernel_opt.order > 0 ? kernel_opt.order : meta.order;
        if (order > meta.order) throw data_error("requested order exceeds the feature file's order");
        KernelSpec spec{order, meta.tau, meta.ops, !kernel_opt.no_normalize};
        KernelMatrix km = gram_matrix(features, spec, threads);
        if (!kernel_opt.combine_with.empty()) {
            std::ifstream min(kernel_opt.combine_with, std::ios::binary);
            if (!min) throw data_error("cannot open matrix '" + kernel_opt.combine_with + "'");
            KernelMatrix other = read_matrix_tsv(min);
            auto w = split_csv(kernel_opt.weights);
            if (w.size() != 2) throw data_error("--weights needs two comma-separated values");
            km = combine_kernels({km, other}, {std::stod(w[0]), std::stod(w[1])});
        }
        auto out = outputs.open(kernel_opt.output);
        write_matrix_tsv(out, km);
        if (!kernel_opt.svmlight.empty()) {
            std::vector<int> labels;
            if (!kernel_opt.labels.empty()) {
                LabeledDataset d = load_labels(kernel_opt.labels);
                std::map<std::string, int> by_id;
                for (std::size_t i = 0; i < d.ids.size(); ++i) by_id[d.ids[i]] = d.labels[i];
                for (const auto& id : km.ids) labels.push_back(by_id.count(id) ? by_id[id] : 0);
            }
            auto svm = outputs.open(kernel_opt.svmlight);
            write_svmlight(svm, km, labels);
        }
        outputs.commit();
    });

    // ---- rw-kernel ---------------------------------------------------------
    auto* rw_cmd = app.add_subcommand("rw-kernel", "simultaneous random-walk kernel matrix");
    struct {
        std::string input, output, ids;
        WalkConfig cfg;
    } rw_opt;
    rw_cmd->add_option("-i,--input", rw_opt.input, "input HGR")->required();
    rw_cmd->add_option("-o,--output", rw_opt.output, "output TSV matrix")->required();
    rw_cmd->add_option("--ids", rw_opt.ids, "file with one vertex id per line (default: all vertices)");
    rw_cmd->add_option("--steps", rw_opt.cfg.total_steps, "total steps across all walks (default 10000)");
    rw_cmd->add_option("--restart", rw_opt.cfg.restart_prob, "restart probability (default 0.1)");
    rw_cmd->add_option("--seed", rw_opt.cfg.seed, "RNG seed");
    rw_cmd->add_flag("--cumulative", rw_opt.cfg.cumulative, "score per-step label agreement");
    rw_cmd->add_flag("--allow-self-destination", rw_opt.cfg.allow_self_destination,
                     "a step may stay on its current vertex");
    rw_cmd->add_flag("--exclude-arriving-edge", rw_opt.cfg.exclude_arriving_edge,
                     "a step may not re-pick the edge it arrived by");
    rw_cmd->callback([&] {
        Hypergraph g = load_hgr(rw_opt.input);
        std::vector<std::string> ids;
        if (rw_opt.ids.empty()) {
            for (int v = 0; v < g.vertex_count(); ++v) ids.push_back(g.vertex(v).id);
        } else {
            std::ifstream in(rw_opt.ids);
            if (!in) throw data_error("cannot open ids file '" + rw_opt.ids + "'");
            std::string id;
            while (in >> id) ids.push_back(id);
        }
        KernelMatrix km = random_walk_gram(g, ids, rw_opt.cfg, threads);
        auto out = outputs.open(rw_opt.output);
        write_matrix_tsv(out, km);
        outputs.commit();
    });

    // ---- spectrum ----------------------------------------------------------
    auto* spec_cmd = app.add_subcommand("spectrum", "k-mer spectrum features or pairwise spectrum kernel");
    struct {
        std::string fasta, output, pairs;
        int k = 4;
        bool normalize = false;
    } spec_opt;
    spec_cmd->add_option("--fasta", spec_opt.fasta, "sequences (headers = vertex ids)")->required();
    spec_cmd->add_option("-o,--output", spec_opt.output, "output file")->required();
    spec_cmd->add_option("-k,--kmer", spec_opt.k, "k-mer size (default 4)");
    spec_cmd->add_option("--pairs", spec_opt.pairs,
                         "pairs file '<pair-id> <vid1> <vid2>': write the pairwise spectrum Gram matrix");
    spec_cmd->add_flag("--normalize", spec_opt.normalize, "cosine-normalize the pair matrix");
    spec_cmd->callback([&] {
        auto seqs = load_fasta(spec_opt.fasta);
        auto out = outputs.open(spec_opt.output);
        if (spec_opt.pairs.empty()) {
            for (const auto& s : seqs) {
                out << s.id;
                for (const auto& [kmer, count] : spectrum_features(s, spec_opt.k))
                    out << " " << kmer << ":" << count;
                out << "\n";
            }
        } else {
            std::ifstream in(spec_opt.pairs);
            if (!in) throw data_error("cannot open pairs file '" + spec_opt.pairs + "'");
            std::vector<PairExample> pairs;
            std::string line;
            int lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                auto tok = detail::split_tokens(line);
                if (tok.empty() || tok[0][0] == '#') continue;
                if (tok.size() != 3) throw parse_error(lineno, "pair line must be '<id> <vid1> <vid2>'");
                pairs.push_back({tok[0], tok[1], tok[2]});
            }
            KernelMatrix km = pairwise_spectrum_kernel(pairs, seqs, spec_opt.k, spec_opt.normalize);
            write_matrix_tsv(out, km);
        }
        outputs.commit();
    });

    // ---- polya -------------------------------------------------------------
    auto* polya_cmd = app.add_subcommand("polya", "equivalence classes, cycle indices and kappa");
    struct {
        std::string output;
        int n = 3, sigma = 3, xi = 2;
        bool human = false;
    } polya_opt;
    polya_cmd->add_option("--n", polya_opt.n, "hypergraphlet order (1..4)")->required();
    polya_cmd->add_option("--sigma", polya_opt.sigma, "vertex alphabet size to evaluate at");
    polya_cmd->add_option("--xi", polya_opt.xi, "edge alphabet size to evaluate at");
    polya_cmd->add_option("-o,--output", polya_opt.output, "output TSV (default: stdout)");
    polya_cmd->add_flag("--human", polya_opt.human, "human-readable report");
    polya_cmd->callback([&] {
        std::ostringstream buf;
        auto emit = [&](bool fully) {
            auto table = partition_classes(polya_opt.n, fully);
            int xi_eval = fully ? polya_opt.xi : 1;
            if (polya_opt.human) {
                buf << (fully ? "fully labeled" : "vertex-labeled") << " classes, n=" << polya_opt.n << ":\n";
                for (std::size_t c = 0; c < table.classes.size(); ++c) {
                    const auto& cls = table.classes[c];
                    buf << "  S" << (c + 1) << ": size " << cls.members.size() << ", |A|=" << cls.group_size
                        << ", Z = " << cls.index.to_string() << ", m(" << polya_opt.sigma << ","
                        << xi_eval << ") = " << cls.evaluate(polya_opt.sigma, xi_eval) << "\n";
                }
            } else {
                for (std::size_t c = 0; c < table.classes.size(); ++c) {
                    const auto& cls = table.classes[c];
                    buf << polya_opt.n << "\t" << (fully ? "full" : "vertex") << "\tS" << (c + 1) << "\t"
                        << cls.members.size() << "\t" << cls.group_size << "\t" << cls.index.to_string()
                        << "\t" << cls.evaluate(polya_opt.sigma, xi_eval) << "\n";
                }
            }
        };
        if (!polya_opt.human) buf << "n\tvariant\tclass\tsize\tgroup\tcycle_index\tm\n";
        emit(false);
        emit(true);
        long long kp = kappa(polya_opt.n, polya_opt.sigma, polya_opt.xi);
        if (polya_opt.human)
            buf << "kappa(" << polya_opt.n << "," << polya_opt.sigma << "," << polya_opt.xi << ") = " << kp << "\n";
        else
            buf << polya_opt.n << "\tkappa\t-\t-\t-\t-\t" << kp << "\n";
        if (polya_opt.output.empty()) {
            std::cout << buf.str();
        } else {
            auto out = outputs.open(polya_opt.output);
            out << buf.str();
            outputs.commit();
        }
    });

    // ---- cv ----------------------------------------------------------------
    auto* cv_cmd = app.add_subcommand("cv", "cross-validated SVM evaluation of hypergraphlet kernels");
    struct {
        std::string input, labels, output, ops = "vl,hl,hi", roc, folds_tsv, fasta;
        int order = 4, tau = 0, folds = 10, spectrum_k = 4, cluster_k = 0;
        std::uint64_t seed = 0;
        bool no_stratify = false, pu = false, no_normalize = false, unsafe = false, grid = false;
        bool combine_spectrum = false;
    } cv_opt;
    cv_cmd->add_option("-i,--input", cv_opt.input, "input HGR")->required();
    cv_cmd->add_option("--labels", cv_opt.labels, "labels file")->required();
    cv_cmd->add_option("-o,--output", cv_opt.output, "JSON summary")->required();
    cv_cmd->add_option("--order", cv_opt.order, "maximum hypergraphlet order (default 4)");
    cv_cmd->add_option("--tau", cv_opt.tau, "edit-distance radius (default 0)");
    cv_cmd->add_option("--ops", cv_opt.ops, "edit ops subset of vl,hl,hi");
    cv_cmd->add_option("--folds", cv_opt.folds, "cross-validation folds (default 10)");
    cv_cmd->add_option("--seed", cv_opt.seed, "fold-assignment seed");
    cv_cmd->add_flag("--no-stratify", cv_opt.no_stratify, "plain instead of stratified folds");
    cv_cmd->add_flag("--pu", cv_opt.pu, "positive-unlabeled: treat unlabeled as negatives");
    cv_cmd->add_flag("--no-normalize", cv_opt.no_normalize, "skip cosine normalization");
    cv_cmd->add_flag("--unsafe-grid", cv_opt.unsafe, "allow values outside the default grid");
    cv_cmd->add_flag("--grid", cv_opt.grid, "sweep tau x N (x sigma with --fasta) and report every cell");
    cv_cmd->add_option("--roc", cv_opt.roc, "write pooled ROC points TSV");
    cv_cmd->add_option("--folds-tsv", cv_opt.folds_tsv, "write per-fold AUC TSV");
    cv_cmd->add_option("--fasta", cv_opt.fasta, "sequences for spectrum combination / clustering");
    cv_cmd->add_flag("--combine-spectrum", cv_opt.combine_spectrum,
                     "equal-weight combination with the vertex spectrum kernel (needs --fasta)");
    cv_cmd->add_option("--spectrum-k", cv_opt.spectrum_k, "k-mer size for --combine-spectrum (default 4)");
    cv_cmd->add_option("--cluster-k", cv_opt.cluster_k,
                       "relabel vertices by k-mer clustering into this many labels (needs --fasta)");
    cv_cmd->callback([&] {
        check_grid(cv_opt.tau, cv_opt.order, cv_opt.unsafe);
        if (!cv_opt.unsafe && cv_opt.cluster_k != 0 && cv_opt.cluster_k != 4 && cv_opt.cluster_k != 8 &&
            cv_opt.cluster_k != 16)
            throw CLI::ValidationError("--cluster-k must be 4, 8 or 16 (pass --unsafe-grid to override)");
        Hypergraph g = load_hgr(cv_opt.input);
        LabeledDataset labels = load_labels(cv_opt.labels);
        std::vector<SequenceRecord> seqs;
        if (!cv_opt.fasta.empty()) seqs = load_fasta(cv_opt.fasta);
        if ((cv_opt.combine_spectrum || cv_opt.cluster_k > 0) && seqs.empty())
            throw CLI::ValidationError("--combine-spectrum/--cluster-k need --fasta");

        auto run_cell = [&](int tau, int order, int cluster_k) {
            Hypergraph working = g;
            if (cluster_k > 0) {
                auto clustered = cluster_alphabet(kmer_vectors(seqs, cv_opt.spectrum_k), cluster_k);
                working = relabel_vertices(g, clustered);
            }
            CvPipelineConfig cfg;
            cfg.kernel = KernelSpec{order, tau, ops_from_string(cv_opt.ops), !cv_opt.no_normalize};
            cfg.folds = cv_opt.folds;
            cfg.seed = cv_opt.seed;
            cfg.stratify = !cv_opt.no_stratify;
            cfg.pu = cv_opt.pu;
            cfg.threads = threads;
            if (cv_opt.combine_spectrum) {
                LabeledDataset d = cfg.pu ? pu_relabel(labels) : labels;
                std::vector<std::string> roots;
                for (std::size_t i = 0; i < d.ids.size(); ++i)
                    if (d.labels[i] != 0) roots.push_back(d.ids[i]);
                KernelMatrix sp = cosine_normalize(vertex_spectrum_gram(roots, seqs, cv_opt.spectrum_k));
                return std::make_pair(cfg, run_cv_pipeline(working, labels, cfg, &sp));
            }
            return std::make_pair(cfg, run_cv_pipeline(working, labels, cfg));
        };

        nlohmann::ordered_json summary;
        CvPipelineConfig used_cfg;
        CvPipelineResult result;
        if (cv_opt.grid) {
            std::vector<int> taus{0, 1};
            std::vector<int> orders{3, 4};
            std::vector<int> cluster_ks = seqs.empty() ? std::vector<int>{cv_opt.cluster_k}
                                                       : std::vector<int>{4, 8, 16};
            nlohmann::ordered_json cells = nlohmann::ordered_json::array();
            double best = -1.0;
            nlohmann::ordered_json best_cell;
            for (int ck : cluster_ks)
                for (int tau : taus)
                    for (int order : orders) {
                        auto [cfg, res] = run_cell(tau, order, ck);
                        nlohmann::ordered_json cell;
                        cell["tau"] = tau;
                        cell["order"] = order;
                        if (ck > 0) cell["cluster_k"] = ck;
                        cell["mean_auc"] = res.cv.mean_auc;
                        cell["std_auc"] = res.cv.std_auc;
                        cells.push_back(cell);
                        if (res.cv.mean_auc > best) {
                            best = res.cv.mean_auc;
                            best_cell = cell;
                            used_cfg = cfg;
                            result = std::move(res);
                        }
                    }
            summary = cv_summary_json(used_cfg, result, cv_opt.input);
            summary["selection_mode"] = "best-cell-test-auc";
            summary["grid"] = cells;
            summary["best"] = best_cell;
        } else {
            auto [cfg, res] = run_cell(cv_opt.tau, cv_opt.order, cv_opt.cluster_k);
            used_cfg = cfg;
            result = std::move(res);
            summary = cv_summary_json(used_cfg, result, cv_opt.input);
            summary["selection_mode"] = "single";
        }

        auto out = outputs.open(cv_opt.output);
        out << summary.dump(2) << "\n";
        if (!cv_opt.roc.empty()) {
            auto roc = outputs.open(cv_opt.roc);
            roc << "fpr\ttpr\n";
            for (const auto& [fpr, tpr] : result.cv.roc_points)
                roc << format_kernel_value(fpr) << "\t" << format_kernel_value(tpr) << "\n";
        }
        if (!cv_opt.folds_tsv.empty()) {
            auto ft = outputs.open(cv_opt.folds_tsv);
            ft << "fold\tauc\n";
            for (std::size_t f = 0; f < result.cv.fold_aucs.size(); ++f)
                ft << f << "\t" << format_kernel_value(result.cv.fold_aucs[f]) << "\n";
        }
        outputs.commit();
    });

    // ---- gen-synthetic -------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("gen-synthetic", "seeded planted-motif benchmark hypergraph");
    struct {
        std::string output, labels_out;
        int vertices = 500;
        std::uint64_t seed = 1;
    } gen_opt;
    gen_cmd->add_option("-o,--output", gen_opt.output, "output HGR")->required();
    gen_cmd->add_option("--labels-out", gen_opt.labels_out, "output labels file")->required();
    gen_cmd->add_option("--vertices", gen_opt.vertices, "vertex count (default 500)");
    gen_cmd->add_option("--seed", gen_opt.seed, "generator seed (default 1)");
    gen_cmd->callback([&] {
        SyntheticBenchmark bench = make_benchmark(gen_opt.vertices, gen_opt.seed);
        auto out = outputs.open(gen_opt.output);
        serialize_hypergraph(out, bench.graph);
        auto lab = outputs.open(gen_opt.labels_out);
        write_labels(lab, bench.labels);
        outputs.commit();
    });

    // ---- cluster-labels --------------------------------------------------------
    auto* cluster_cmd = app.add_subcommand("cluster-labels", "vertex alphabet by k-mer clustering");
    struct {
        std::string fasta, output, input_hgr, output_hgr;
        int k = 8, kmer = 4;
        bool unsafe = false;
    } cluster_opt;
    cluster_cmd->add_option("--fasta", cluster_opt.fasta, "sequences (headers = vertex ids)")->required();
    cluster_cmd->add_option("-o,--output", cluster_opt.output, "output id->label map TSV")->required();
    cluster_cmd->add_option("--k", cluster_opt.k, "number of clusters / labels (default 8)");
    cluster_cmd->add_option("--kmer", cluster_opt.kmer, "k-mer size (default 4)");
    cluster_cmd->add_option("--input-hgr", cluster_opt.input_hgr, "relabel this hypergraph's vertices");
    cluster_cmd->add_option("--output-hgr", cluster_opt.output_hgr, "where to write the relabeled HGR");
    cluster_cmd->add_flag("--unsafe-grid", cluster_opt.unsafe, "allow cluster counts outside {4,8,16}");
    cluster_cmd->callback([&] {
        if (!cluster_opt.unsafe && cluster_opt.k != 4 && cluster_opt.k != 8 && cluster_opt.k != 16)
            throw CLI::ValidationError("--k must be 4, 8 or 16 (pass --unsafe-grid to override)");
        auto seqs = load_fasta(cluster_opt.fasta);
        auto labels = cluster_alphabet(kmer_vectors(seqs, cluster_opt.kmer), cluster_opt.k);
        auto out = outputs.open(cluster_opt.output);
        for (const auto& [id, label] : labels) out << id << "\t" << label << "\n";
        if (!cluster_opt.input_hgr.empty()) {
            if (cluster_opt.output_hgr.empty()) throw CLI::ValidationError("--input-hgr needs --output-hgr");
            Hypergraph g = load_hgr(cluster_opt.input_hgr);
            auto relabeled = relabel_vertices(g, labels);
            auto gout = outputs.open(cluster_opt.output_hgr);
            serialize_hypergraph(gout, relabeled);
        }
        outputs.commit();
    });

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
