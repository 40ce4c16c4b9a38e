#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hyperlet/errors.hpp"

namespace hyperlet {

/// Dense row-major matrix; just enough linear algebra for Gram matrices.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)]; }
    double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations. Adequate for
/// the PSD checks run by the test suites (matrices up to a few hundred rows).
inline std::vector<double> symmetric_eigenvalues(const Matrix& m, int max_sweeps = 64) {
    if (m.rows() != m.cols()) throw data_error("eigenvalues need a square matrix");
    const int n = m.rows();
    Matrix a = m;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (apq == 0.0) continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a.at(k, p);
                    double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a.at(p, k);
                    double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a.at(i, i);
    return eig;
}

}  // namespace hyperlet
