#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hyperlet/errors.hpp"
#include "hyperlet/kernel.hpp"
#include "hyperlet/parallel.hpp"
#include "hyperlet/rng.hpp"

namespace hyperlet {

/// Example ids aligned with a kernel matrix; labels are +1, -1 or 0
/// (unlabeled). In the positive-unlabeled setting callers map 0 to -1 before
/// training (see pu_relabel).
struct LabeledDataset {
    std::vector<std::string> ids;
    std::vector<int> labels;
};

inline LabeledDataset pu_relabel(LabeledDataset d) {
    for (int& t : d.labels)
        if (t == 0) t = -1;
    return d;
}

struct SvmModel {
    std::vector<std::string> train_ids;  // column order expected by predict
    std::vector<double> coef;            // alpha_i * y_i
    double bias = 0.0;
    double platt_a = 0.0;
    double platt_b = 0.0;
    double dual_objective = 0.0;
    double capacity = 1.0;
    long long iterations = 0;
    bool converged = true;
};

namespace detail {

/// Platt sigmoid fit (A, B) minimizing the calibrated negative log-likelihood
/// of training decision values, by Newton steps with backtracking.
inline std::pair<double, double> fit_platt(const std::vector<double>& deci, const std::vector<int>& label) {
    const std::size_t len = deci.size();
    double prior1 = 0, prior0 = 0;
    for (int t : label) (t > 0 ? prior1 : prior0) += 1.0;
    const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo_target = 1.0 / (prior0 + 2.0);
    std::vector<double> t(len);
    for (std::size_t i = 0; i < len; ++i) t[i] = label[i] > 0 ? hi_target : lo_target;

    double a = 0.0;
    double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    auto objective = [&](double A, double B) {
        double f = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            double fApB = deci[i] * A + B;
            if (fApB >= 0)
                f += t[i] * fApB + std::log1p(std::exp(-fApB));
            else
                f += (t[i] - 1.0) * fApB + std::log1p(std::exp(fApB));
        }
        return f;
    };
    double fval = objective(a, b);

    const int max_iterations = 100;
    for (int it = 0; it < max_iterations; ++it) {
        double h11 = 1e-12, h22 = 1e-12, h21 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            double fApB = deci[i] * a + b;
            double p, q;
            if (fApB >= 0) {
                p = std::exp(-fApB) / (1.0 + std::exp(-fApB));
                q = 1.0 / (1.0 + std::exp(-fApB));
            } else {
                p = 1.0 / (1.0 + std::exp(fApB));
                q = std::exp(fApB) / (1.0 + std::exp(fApB));
            }
            double d2 = p * q;
            h11 += deci[i] * deci[i] * d2;
            h22 += d2;
            h21 += deci[i] * d2;
            double d1 = t[i] - p;
            g1 += deci[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;
        double det = h11 * h22 - h21 * h21;
        double da = -(h22 * g1 - h21 * g2) / det;
        double db = -(-h21 * g1 + h11 * g2) / det;
        double gd = g1 * da + g2 * db;
        double step = 1.0;
        bool accepted = false;
        while (step >= 1e-10) {
            double na = a + step * da;
            double nb = b + step * db;
            double nf = objective(na, nb);
            if (nf < fval + 1e-4 * step * gd) {
                a = na;
                b = nb;
                fval = nf;
                accepted = true;
                break;
            }
            step /= 2.0;
        }
        if (!accepted) break;
    }
    return {a, b};
}

}  // namespace detail

/// Soft-margin kernel SVM trained by sequential pairwise optimization on a
/// precomputed Gram matrix (maximal-violating-pair working set with a
/// second-order partner pick). Default capacity replicates the classic
/// precomputed-kernel default, C = 1 / mean(K(x,x)) over training examples.
/// Platt calibration is fit on the raw training decision values.
inline SvmModel svm_train(const KernelMatrix& m, const LabeledDataset& d,
                          std::optional<double> capacity = std::nullopt, double tol = 1e-3,
                          long long max_iterations = 400000) {
    std::map<std::string, int> label_of;
    for (std::size_t i = 0; i < d.ids.size(); ++i) {
        if (!label_of.emplace(d.ids[i], d.labels[i]).second) throw data_error("duplicate dataset id " + d.ids[i]);
    }
    std::vector<int> train;  // matrix indices of labeled examples
    std::vector<double> y;
    for (int i = 0; i < m.size(); ++i) {
        auto it = label_of.find(m.ids[static_cast<std::size_t>(i)]);
        if (it == label_of.end() || it->second == 0) continue;
        train.push_back(i);
        y.push_back(it->second > 0 ? 1.0 : -1.0);
    }
    const int n = static_cast<int>(train.size());
    if (n < 2) throw data_error("svm_train needs at least two labeled examples");
    if (std::all_of(y.begin(), y.end(), [](double v) { return v > 0; }) ||
        std::all_of(y.begin(), y.end(), [](double v) { return v < 0; }))
        throw data_error("svm_train needs both classes in the training set");

    auto K = [&](int i, int j) {
        return m.values.at(train[static_cast<std::size_t>(i)], train[static_cast<std::size_t>(j)]);
    };

    double mean_diag = 0.0;
    for (int i = 0; i < n; ++i) mean_diag += K(i, i);
    mean_diag /= n;
    const double C = capacity.value_or(mean_diag > 0 ? 1.0 / mean_diag : 1.0);
    if (C <= 0) throw data_error("capacity parameter must be positive");

    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(K(i, i)));

    std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
    std::vector<double> grad(static_cast<std::size_t>(n), -1.0);  // d/dalpha of 1/2 a'Qa - 1'a

    SvmModel model;
    model.capacity = C;
    long long iter = 0;
    double g_max = 0.0, g_min = 0.0;
    while (iter < max_iterations) {
        ++iter;
        int i = -1;
        g_max = -std::numeric_limits<double>::infinity();
        g_min = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            bool in_up = (y[static_cast<std::size_t>(k)] > 0 && alpha[static_cast<std::size_t>(k)] < C) ||
                         (y[static_cast<std::size_t>(k)] < 0 && alpha[static_cast<std::size_t>(k)] > 0);
            if (in_up) {
                double v = -y[static_cast<std::size_t>(k)] * grad[static_cast<std::size_t>(k)];
                if (v >= g_max) {
                    g_max = v;
                    i = k;
                }
            }
        }
        int j = -1;
        double obj_min = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            bool in_low = (y[static_cast<std::size_t>(k)] > 0 && alpha[static_cast<std::size_t>(k)] > 0) ||
                          (y[static_cast<std::size_t>(k)] < 0 && alpha[static_cast<std::size_t>(k)] < C);
            if (!in_low) continue;
            double v = -y[static_cast<std::size_t>(k)] * grad[static_cast<std::size_t>(k)];
            g_min = std::min(g_min, v);
            double b = g_max - v;
            if (b > 0) {
                double lambda = K(i, i) + K(k, k) - 2.0 * K(i, k);
                if (lambda < -1e-8 * std::max(1.0, max_diag))
                    throw numeric_error("kernel matrix is not positive semidefinite along a working pair");
                lambda = std::max(lambda, 1e-12);
                double decrease = -(b * b) / lambda;
                if (decrease <= obj_min) {
                    obj_min = decrease;
                    j = k;
                }
            }
        }
        if (i == -1 || j == -1 || g_max - g_min < tol) break;

        double lambda = std::max(K(i, i) + K(j, j) - 2.0 * K(i, j), 1e-12);
        double step = (-y[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(i)] +
                       y[static_cast<std::size_t>(j)] * grad[static_cast<std::size_t>(j)]) /
                      lambda;
        double old_ai = alpha[static_cast<std::size_t>(i)];
        double old_aj = alpha[static_cast<std::size_t>(j)];
        alpha[static_cast<std::size_t>(i)] += y[static_cast<std::size_t>(i)] * step;
        alpha[static_cast<std::size_t>(j)] -= y[static_cast<std::size_t>(j)] * step;
        // Project back to the box while preserving y'alpha.
        double sum = y[static_cast<std::size_t>(i)] * old_ai + y[static_cast<std::size_t>(j)] * old_aj;
        alpha[static_cast<std::size_t>(i)] = std::clamp(alpha[static_cast<std::size_t>(i)], 0.0, C);
        alpha[static_cast<std::size_t>(j)] =
            y[static_cast<std::size_t>(j)] * (sum - y[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(i)]);
        alpha[static_cast<std::size_t>(j)] = std::clamp(alpha[static_cast<std::size_t>(j)], 0.0, C);
        alpha[static_cast<std::size_t>(i)] =
            y[static_cast<std::size_t>(i)] * (sum - y[static_cast<std::size_t>(j)] * alpha[static_cast<std::size_t>(j)]);

        double dai = alpha[static_cast<std::size_t>(i)] - old_ai;
        double daj = alpha[static_cast<std::size_t>(j)] - old_aj;
        if (dai == 0.0 && daj == 0.0) break;
        for (int k = 0; k < n; ++k)
            grad[static_cast<std::size_t>(k)] += y[static_cast<std::size_t>(k)] *
                                                 (K(i, k) * dai * y[static_cast<std::size_t>(i)] +
                                                  K(j, k) * daj * y[static_cast<std::size_t>(j)]);
    }
    model.iterations = iter;
    model.converged = iter < max_iterations;

    // Bias from free support vectors, falling back to the violation midpoint.
    double bias_sum = 0.0;
    int bias_count = 0;
    for (int k = 0; k < n; ++k) {
        if (alpha[static_cast<std::size_t>(k)] > 1e-12 && alpha[static_cast<std::size_t>(k)] < C - 1e-12) {
            double s = y[static_cast<std::size_t>(k)] * (grad[static_cast<std::size_t>(k)] + 1.0);
            bias_sum += y[static_cast<std::size_t>(k)] - s;
            ++bias_count;
        }
    }
    if (bias_count > 0) {
        model.bias = bias_sum / bias_count;
    } else {
        model.bias = std::isfinite(g_max) && std::isfinite(g_min) ? (g_max + g_min) / 2.0 : 0.0;
    }

    double sum_alpha = 0.0, alpha_grad = 0.0;
    for (int k = 0; k < n; ++k) {
        sum_alpha += alpha[static_cast<std::size_t>(k)];
        alpha_grad += alpha[static_cast<std::size_t>(k)] * grad[static_cast<std::size_t>(k)];
    }
    model.dual_objective = 0.5 * (sum_alpha - alpha_grad);

    model.train_ids.reserve(static_cast<std::size_t>(n));
    model.coef.reserve(static_cast<std::size_t>(n));
    std::vector<double> deci(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        model.train_ids.push_back(m.ids[static_cast<std::size_t>(train[static_cast<std::size_t>(k)])]);
        model.coef.push_back(alpha[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)]);
        // y_k * (grad_k + 1) = sum_l alpha_l y_l K(k, l)
        deci[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(k)] * (grad[static_cast<std::size_t>(k)] + 1.0) + model.bias;
    }
    std::vector<int> train_labels(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) train_labels[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(k)] > 0 ? 1 : -1;
    auto [pa, pb] = detail::fit_platt(deci, train_labels);
    model.platt_a = pa;
    model.platt_b = pb;
    return model;
}

/// Raw decision values for test rows of K(test, train); column order must
/// match model.train_ids.
inline std::vector<double> decision_values(const SvmModel& model, const Matrix& kernel_rows) {
    if (kernel_rows.cols() != static_cast<int>(model.train_ids.size()))
        throw data_error("kernel row width does not match the training set");
    std::vector<double> out(static_cast<std::size_t>(kernel_rows.rows()));
    for (int r = 0; r < kernel_rows.rows(); ++r) {
        double f = model.bias;
        for (int c = 0; c < kernel_rows.cols(); ++c) f += model.coef[static_cast<std::size_t>(c)] * kernel_rows.at(r, c);
        out[static_cast<std::size_t>(r)] = f;
    }
    return out;
}

/// Platt-calibrated probabilities in (0,1).
inline std::vector<double> predict(const SvmModel& model, const Matrix& kernel_rows) {
    auto deci = decision_values(model, kernel_rows);
    for (double& f : deci) {
        double fApB = f * model.platt_a + model.platt_b;
        f = fApB >= 0 ? std::exp(-fApB) / (1.0 + std::exp(-fApB)) : 1.0 / (1.0 + std::exp(fApB));
    }
    return deci;
}

/// Rank-based AUC with ties counted half (Mann-Whitney form).
inline double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw data_error("auc: score/label length mismatch");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double pos = 0, neg = 0, rank_sum_pos = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;  // 1-based
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] > 0) {
                pos += 1;
                rank_sum_pos += avg_rank;
            } else {
                neg += 1;
            }
        }
        i = j;
    }
    if (pos == 0 || neg == 0) throw data_error("auc needs both classes");
    return (rank_sum_pos - pos * (pos + 1) / 2.0) / (pos * neg);
}

struct CvResult {
    double mean_auc = 0.0;
    double std_auc = 0.0;
    std::vector<double> fold_aucs;
    std::vector<std::pair<double, double>> roc_points;  // (fpr, tpr), pooled over folds
    int folds = 0;
    std::uint64_t seed = 0;
    bool stratified = true;
    int examples = 0;
};

/// Stratified k-fold cross-validation with precomputed kernels: per fold,
/// train on the remainder, Platt-calibrate, score the held-out examples and
/// compute the fold AUC. Fold assignment is a seeded shuffle per class, so
/// identical seeds give identical folds.
inline CvResult cross_validate(const KernelMatrix& m, const LabeledDataset& d, int folds = 10,
                               std::uint64_t seed = 0, bool stratify = true, int threads = 1) {
    if (folds < 2) throw data_error("cross_validate needs folds >= 2");
    std::map<std::string, int> label_of;
    for (std::size_t i = 0; i < d.ids.size(); ++i) label_of.emplace(d.ids[i], d.labels[i]);

    std::vector<int> labeled;  // matrix indices
    std::vector<int> label;
    for (int i = 0; i < m.size(); ++i) {
        auto it = label_of.find(m.ids[static_cast<std::size_t>(i)]);
        if (it == label_of.end() || it->second == 0) continue;
        labeled.push_back(i);
        label.push_back(it->second > 0 ? 1 : -1);
    }
    const int n = static_cast<int>(labeled.size());
    if (n < folds) throw data_error("fewer labeled examples than folds");

    std::vector<int> fold_of(static_cast<std::size_t>(n), -1);
    if (stratify) {
        std::vector<int> pos, neg;
        for (int k = 0; k < n; ++k) (label[static_cast<std::size_t>(k)] > 0 ? pos : neg).push_back(k);
        if (static_cast<int>(pos.size()) < folds || static_cast<int>(neg.size()) < folds)
            throw data_error("degenerate fold: a class has fewer members than folds; "
                             "reduce folds or disable stratification");
        SplitMix64 rp(stream_seed(seed, 1, 0));
        SplitMix64 rn(stream_seed(seed, 2, 0));
        shuffle(pos, rp);
        shuffle(neg, rn);
        for (std::size_t k = 0; k < pos.size(); ++k) fold_of[static_cast<std::size_t>(pos[k])] = static_cast<int>(k % static_cast<std::size_t>(folds));
        for (std::size_t k = 0; k < neg.size(); ++k) fold_of[static_cast<std::size_t>(neg[k])] = static_cast<int>(k % static_cast<std::size_t>(folds));
    } else {
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        SplitMix64 r(stream_seed(seed, 0, 0));
        shuffle(all, r);
        for (std::size_t k = 0; k < all.size(); ++k) fold_of[static_cast<std::size_t>(all[k])] = static_cast<int>(k % static_cast<std::size_t>(folds));
    }

    struct FoldOut {
        double auc_value = 0.0;
        std::vector<std::pair<double, std::pair<int, std::string>>> scored;  // prob, (label, id)
    };
    std::vector<FoldOut> results(static_cast<std::size_t>(folds));

    parallel_for(static_cast<std::size_t>(folds), threads, [&](std::size_t f) {
        std::vector<int> train_local, test_local;  // positions into labeled[]
        for (int k = 0; k < n; ++k)
            (fold_of[static_cast<std::size_t>(k)] == static_cast<int>(f) ? test_local : train_local).push_back(k);
        bool has_pos = false, has_neg = false;
        for (int k : train_local) (label[static_cast<std::size_t>(k)] > 0 ? has_pos : has_neg) = true;
        if (!has_pos || !has_neg)
            throw data_error("degenerate fold " + std::to_string(f) + ": training split lacks a class");

        KernelMatrix sub;
        sub.ids.reserve(train_local.size());
        for (int k : train_local) sub.ids.push_back(m.ids[static_cast<std::size_t>(labeled[static_cast<std::size_t>(k)])]);
        sub.values = Matrix(static_cast<int>(train_local.size()), static_cast<int>(train_local.size()));
        for (std::size_t a = 0; a < train_local.size(); ++a)
            for (std::size_t b = 0; b < train_local.size(); ++b)
                sub.values.at(static_cast<int>(a), static_cast<int>(b)) =
                    m.values.at(labeled[static_cast<std::size_t>(train_local[a])], labeled[static_cast<std::size_t>(train_local[b])]);

        LabeledDataset sub_d;
        sub_d.ids = sub.ids;
        for (int k : train_local) sub_d.labels.push_back(label[static_cast<std::size_t>(k)]);

        SvmModel model = svm_train(sub, sub_d);

        Matrix rows(static_cast<int>(test_local.size()), static_cast<int>(train_local.size()));
        for (std::size_t a = 0; a < test_local.size(); ++a)
            for (std::size_t b = 0; b < train_local.size(); ++b)
                rows.at(static_cast<int>(a), static_cast<int>(b)) =
                    m.values.at(labeled[static_cast<std::size_t>(test_local[a])], labeled[static_cast<std::size_t>(train_local[b])]);
        auto probs = predict(model, rows);

        std::vector<int> test_labels;
        for (int k : test_local) test_labels.push_back(label[static_cast<std::size_t>(k)]);
        results[f].auc_value = auc(probs, test_labels);
        for (std::size_t a = 0; a < test_local.size(); ++a)
            results[f].scored.push_back(
                {probs[a], {test_labels[a], m.ids[static_cast<std::size_t>(labeled[static_cast<std::size_t>(test_local[a])])]}});
    });

    CvResult out;
    out.folds = folds;
    out.seed = seed;
    out.stratified = stratify;
    out.examples = n;
    for (const auto& r : results) out.fold_aucs.push_back(r.auc_value);
    out.mean_auc = std::accumulate(out.fold_aucs.begin(), out.fold_aucs.end(), 0.0) / folds;
    double var = 0.0;
    for (double a : out.fold_aucs) var += (a - out.mean_auc) * (a - out.mean_auc);
    out.std_auc = folds > 1 ? std::sqrt(var / (folds - 1)) : 0.0;

    // Pooled ROC: sort by score descending (ids break ties deterministically)
    // and emit one point per threshold group.
    std::vector<std::pair<double, std::pair<int, std::string>>> pooled;
    for (const auto& r : results) pooled.insert(pooled.end(), r.scored.begin(), r.scored.end());
    std::sort(pooled.begin(), pooled.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second.second < b.second.second;
    });
    double total_pos = 0, total_neg = 0;
    for (const auto& s : pooled) (s.second.first > 0 ? total_pos : total_neg) += 1;
    out.roc_points.push_back({0.0, 0.0});
    double tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) {
            (pooled[j].second.first > 0 ? tp : fp) += 1;
            ++j;
        }
        out.roc_points.push_back({fp / std::max(total_neg, 1.0), tp / std::max(total_pos, 1.0)});
        i = j;
    }
    return out;
}

/// Average-linkage (UPGMA) agglomerative clustering under cosine distance cut
/// at k clusters. Labels "L0".."L(k-1)" are assigned by decreasing cluster
/// size, ties by smallest member id; merge ties resolve by the
/// lexicographically smallest representative pair, so the output is invariant
/// under input reordering.
inline std::map<std::string, std::string> cluster_alphabet(
    const std::vector<std::pair<std::string, std::map<std::string, double>>>& vectors, int k) {
    const int n = static_cast<int>(vectors.size());
    if (k < 1) throw data_error("cluster count must be >= 1");
    if (k > n) throw data_error("cluster count exceeds number of items");
    for (const auto& [id, vec] : vectors)
        if (vec.empty()) throw data_error("empty vector for id '" + id + "'");

    // Process items in id order so the algorithm never sees the input order.
    std::vector<int> item_order(static_cast<std::size_t>(n));
    std::iota(item_order.begin(), item_order.end(), 0);
    std::sort(item_order.begin(), item_order.end(),
              [&](int a, int b) { return vectors[static_cast<std::size_t>(a)].first < vectors[static_cast<std::size_t>(b)].first; });
    for (std::size_t i = 1; i < item_order.size(); ++i)
        if (vectors[static_cast<std::size_t>(item_order[i - 1])].first == vectors[static_cast<std::size_t>(item_order[i])].first)
            throw data_error("duplicate id '" + vectors[static_cast<std::size_t>(item_order[i])].first + "'");

    auto cosine_distance = [&](int a, int b) {
        const auto& va = vectors[static_cast<std::size_t>(a)].second;
        const auto& vb = vectors[static_cast<std::size_t>(b)].second;
        double dot = 0, na = 0, nb = 0;
        for (const auto& [key, val] : va) na += val * val;
        for (const auto& [key, val] : vb) nb += val * val;
        auto ia = va.begin();
        auto ib = vb.begin();
        while (ia != va.end() && ib != vb.end()) {
            if (ia->first < ib->first) ++ia;
            else if (ib->first < ia->first) ++ib;
            else {
                dot += ia->second * ib->second;
                ++ia;
                ++ib;
            }
        }
        if (na == 0 || nb == 0) throw data_error("zero-norm vector in clustering");
        return 1.0 - dot / std::sqrt(na * nb);
    };

    struct Cluster {
        bool alive = true;
        int size = 1;
        std::string rep;                 // smallest member id
        std::vector<std::string> members;
    };
    std::vector<Cluster> clusters(static_cast<std::size_t>(n));
    Matrix dist(n, n);
    for (int a = 0; a < n; ++a) {
        int ia = item_order[static_cast<std::size_t>(a)];
        clusters[static_cast<std::size_t>(a)].rep = vectors[static_cast<std::size_t>(ia)].first;
        clusters[static_cast<std::size_t>(a)].members = {vectors[static_cast<std::size_t>(ia)].first};
        for (int b = a + 1; b < n; ++b) {
            double v = cosine_distance(ia, item_order[static_cast<std::size_t>(b)]);
            dist.at(a, b) = v;
            dist.at(b, a) = v;
        }
    }

    auto rep_pair = [&](int a, int b) {
        return clusters[static_cast<std::size_t>(a)].rep < clusters[static_cast<std::size_t>(b)].rep
                   ? std::make_pair(clusters[static_cast<std::size_t>(a)].rep, clusters[static_cast<std::size_t>(b)].rep)
                   : std::make_pair(clusters[static_cast<std::size_t>(b)].rep, clusters[static_cast<std::size_t>(a)].rep);
    };

    int alive = n;
    while (alive > k) {
        int best_a = -1, best_b = -1;
        double best_d = std::numeric_limits<double>::infinity();
        std::pair<std::string, std::string> best_reps;
        for (int a = 0; a < n; ++a) {
            if (!clusters[static_cast<std::size_t>(a)].alive) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!clusters[static_cast<std::size_t>(b)].alive) continue;
                double v = dist.at(a, b);
                if (best_a < 0 || v < best_d ||
                    (v == best_d && rep_pair(a, b) < best_reps)) {
                    best_d = v;
                    best_a = a;
                    best_b = b;
                    best_reps = rep_pair(a, b);
                }
            }
        }
        // Lance-Williams update for the unweighted average linkage.
        auto& ca = clusters[static_cast<std::size_t>(best_a)];
        auto& cb = clusters[static_cast<std::size_t>(best_b)];
        for (int c = 0; c < n; ++c) {
            if (!clusters[static_cast<std::size_t>(c)].alive || c == best_a || c == best_b) continue;
            double v = (ca.size * dist.at(best_a, c) + cb.size * dist.at(best_b, c)) / (ca.size + cb.size);
            dist.at(best_a, c) = v;
            dist.at(c, best_a) = v;
        }
        ca.size += cb.size;
        ca.members.insert(ca.members.end(), cb.members.begin(), cb.members.end());
        if (cb.rep < ca.rep) ca.rep = cb.rep;
        cb.alive = false;
        --alive;
    }

    std::vector<int> final_clusters;
    for (int c = 0; c < n; ++c)
        if (clusters[static_cast<std::size_t>(c)].alive) final_clusters.push_back(c);
    std::sort(final_clusters.begin(), final_clusters.end(), [&](int a, int b) {
        const auto& ca = clusters[static_cast<std::size_t>(a)];
        const auto& cb = clusters[static_cast<std::size_t>(b)];
        if (ca.size != cb.size) return ca.size > cb.size;
        return ca.rep < cb.rep;
    });
    std::map<std::string, std::string> labels;
    for (std::size_t c = 0; c < final_clusters.size(); ++c)
        for (const auto& id : clusters[static_cast<std::size_t>(final_clusters[c])].members)
            labels[id] = "L" + std::to_string(c);
    return labels;
}

}  // namespace hyperlet
