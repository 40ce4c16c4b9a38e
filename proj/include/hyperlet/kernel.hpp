#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hyperlet/counting.hpp"
#include "hyperlet/edit.hpp"
#include "hyperlet/errors.hpp"
#include "hyperlet/matrix.hpp"
#include "hyperlet/parallel.hpp"

namespace hyperlet {

/// Kernel configuration: orders 1..max_order are summed; tau/ops describe the
/// smoothing the feature vectors carry (tau = 0 means plain counts);
/// normalize applies the cosine transformation to the summed kernel.
struct KernelSpec {
    int max_order = kMaxOrder;
    int tau = 0;
    unsigned ops = kAllEditOps;
    bool normalize = true;
};

/// Symmetric matrix of kernel values over an ordered list of example ids.
struct KernelMatrix {
    std::vector<std::string> ids;
    Matrix values;

    int size() const { return static_cast<int>(ids.size()); }
};

/// Summed per-order inner product; cosine-normalized when spec.normalize is
/// set. Feature vectors must already be smoothed to match spec.tau and
/// spec.ops (raw when tau = 0).
inline double kernel_value(const FeatureVector& fu, const FeatureVector& fv, const KernelSpec& spec) {
    double kuv = feature_dot(fu, fv, spec.max_order);
    if (!spec.normalize) return kuv;
    double kuu = feature_dot(fu, fu, spec.max_order);
    double kvv = feature_dot(fv, fv, spec.max_order);
    if (kuu <= 0.0 || kvv <= 0.0)
        throw numeric_error(std::string("cosine normalization over a zero-norm feature vector (") +
                            (kuu <= 0.0 ? "left" : "right") + " operand)");
    return kuv / std::sqrt(kuu * kvv);
}

/// Gram matrix over (id, feature vector) examples. The upper triangle is
/// computed (in parallel when asked) and mirrored, so the result is exactly
/// symmetric; normalization divides by sqrt of the raw diagonal.
inline KernelMatrix gram_matrix(const std::vector<std::pair<std::string, FeatureVector>>& features,
                                const KernelSpec& spec, int threads = 1) {
    const int n = static_cast<int>(features.size());
    {
        std::set<std::string> unique_ids;
        for (const auto& [id, fv] : features) unique_ids.insert(id);
        if (static_cast<int>(unique_ids.size()) != n) throw data_error("duplicate example ids in gram_matrix");
    }
    KernelMatrix km;
    km.ids.reserve(static_cast<std::size_t>(n));
    for (const auto& [id, fv] : features) km.ids.push_back(id);
    km.values = Matrix(n, n);

    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
        const int i = static_cast<int>(row);
        for (int j = i; j < n; ++j)
            km.values.at(i, j) = feature_dot(features[static_cast<std::size_t>(i)].second,
                                             features[static_cast<std::size_t>(j)].second, spec.max_order);
    });

    if (spec.normalize) {
        std::vector<double> scale(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double d = km.values.at(i, i);
            if (d <= 0.0)
                throw numeric_error("cosine normalization over a zero-norm feature vector: example '" +
                                    km.ids[static_cast<std::size_t>(i)] + "'");
            scale[static_cast<std::size_t>(i)] = std::sqrt(d);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j)
                km.values.at(i, j) /= scale[static_cast<std::size_t>(i)] * scale[static_cast<std::size_t>(j)];
            km.values.at(i, i) = 1.0;  // cosine self-similarity is exactly one
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) km.values.at(i, j) = km.values.at(j, i);
    return km;
}

/// Entrywise weighted sum of kernel matrices over identical id lists.
/// Nonnegative weights preserve positive semidefiniteness.
inline KernelMatrix combine_kernels(const std::vector<KernelMatrix>& matrices,
                                    const std::vector<double>& weights) {
    if (matrices.empty()) throw data_error("combine_kernels needs at least one matrix");
    if (matrices.size() != weights.size()) throw data_error("combine_kernels: weight count mismatch");
    for (double w : weights)
        if (w < 0.0) throw data_error("combine_kernels: negative weight");
    for (const auto& m : matrices)
        if (m.ids != matrices.front().ids) throw data_error("combine_kernels: id lists differ");
    KernelMatrix out;
    out.ids = matrices.front().ids;
    const int n = out.size();
    out.values = Matrix(n, n);
    for (std::size_t m = 0; m < matrices.size(); ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.values.at(i, j) += weights[m] * matrices[m].values.at(i, j);
    return out;
}

/// Applies the cosine transformation to an existing Gram matrix.
inline KernelMatrix cosine_normalize(const KernelMatrix& km) {
    KernelMatrix out = km;
    const int n = km.size();
    std::vector<double> scale(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double d = km.values.at(i, i);
        if (d <= 0.0)
            throw numeric_error("cosine normalization over a zero self-similarity: example '" +
                                km.ids[static_cast<std::size_t>(i)] + "'");
        scale[static_cast<std::size_t>(i)] = std::sqrt(d);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            out.values.at(i, j) = km.values.at(i, j) / (scale[static_cast<std::size_t>(i)] * scale[static_cast<std::size_t>(j)]);
            out.values.at(j, i) = out.values.at(i, j);
        }
        out.values.at(i, i) = 1.0;
    }
    return out;
}

inline std::string format_kernel_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// TSV with an id header row and id-prefixed rows; 17 significant digits.
inline void write_matrix_tsv(std::ostream& out, const KernelMatrix& km) {
    out << "id";
    for (const auto& id : km.ids) out << "\t" << id;
    out << "\n";
    for (int i = 0; i < km.size(); ++i) {
        out << km.ids[static_cast<std::size_t>(i)];
        for (int j = 0; j < km.size(); ++j) out << "\t" << format_kernel_value(km.values.at(i, j));
        out << "\n";
    }
}

inline KernelMatrix read_matrix_tsv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("empty kernel matrix file");
    auto header = detail::split_tokens(line);
    if (header.empty() || header[0] != "id") throw data_error("kernel matrix header must start with 'id'");
    KernelMatrix km;
    km.ids.assign(header.begin() + 1, header.end());
    const int n = km.size();
    km.values = Matrix(n, n);
    int row = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::split_tokens(line);
        if (tok.empty()) continue;
        if (row >= n) throw parse_error(lineno, "more rows than header ids");
        if (tok.size() != static_cast<std::size_t>(n) + 1) throw parse_error(lineno, "wrong column count");
        if (tok[0] != km.ids[static_cast<std::size_t>(row)]) throw parse_error(lineno, "row id does not match header order");
        for (int j = 0; j < n; ++j) km.values.at(row, j) = std::stod(tok[static_cast<std::size_t>(j) + 1]);
        ++row;
    }
    if (row != n) throw data_error("kernel matrix row count does not match header");
    return km;
}

/// SVM-light precomputed-kernel lines: "<label> 0:<row-index> 1:K(x,x1) ...";
/// row indices are 1-based. Labels default to 0 when not supplied.
inline void write_svmlight(std::ostream& out, const KernelMatrix& km, const std::vector<int>& labels = {}) {
    if (!labels.empty() && labels.size() != km.ids.size())
        throw data_error("svmlight labels must align with matrix ids");
    for (int i = 0; i < km.size(); ++i) {
        out << (labels.empty() ? 0 : labels[static_cast<std::size_t>(i)]) << " 0:" << (i + 1);
        for (int j = 0; j < km.size(); ++j) out << " " << (j + 1) << ":" << format_kernel_value(km.values.at(i, j));
        out << "\n";
    }
}

}  // namespace hyperlet
