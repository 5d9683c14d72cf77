#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wigner {

using Vec = std::vector<double>;

/// Dense row-major matrix. Just enough linear algebra for this project:
/// symmetric matmul/matvec hot loops, a Jacobi eigensolver for the small
/// Gram/consistency matrices, and a PSD-tolerant Cholesky for sampling.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

/// C = A * B, ikj loop order for cache locality.
inline Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Mat c(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double* crow = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

inline Vec matvec(const Mat& a, const Vec& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    Vec y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += arow[j] * x[j];
        y[i] = s;
    }
    return y;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double frobenius_dot(const Mat& a, const Mat& b) {
    double s = 0.0;
    const auto& da = a.data();
    const auto& db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
    return s;
}

inline double trace(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a.at(i, i);
    return s;
}

struct SymEigen {
    Vec values;    // ascending
    Mat vectors;   // columns are eigenvectors
};

/// Cyclic Jacobi eigensolver for symmetric matrices. Fine for the small
/// matrices that appear here (Gram contexts, consistency targets, n <= 64
/// eigenpair checks).
inline SymEigen sym_eigen(Mat a, int max_sweeps = 100, double tol = 1e-14) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("sym_eigen: square matrix required");
    Mat v = Mat::identity(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a.at(i, j)));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (std::sqrt(off) <= tol * scale * static_cast<double>(n)) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double app = a.at(p, p), aqq = a.at(q, q);
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    SymEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a.at(i, i);
    // sort ascending, permute eigenvector columns along
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (out.values[idx[j]] < out.values[idx[i]]) std::swap(idx[i], idx[j]);
    Vec sorted(n);
    Mat vs(n, n);
    for (std::size_t c2 = 0; c2 < n; ++c2) {
        sorted[c2] = out.values[idx[c2]];
        for (std::size_t r = 0; r < n; ++r) vs.at(r, c2) = v.at(r, idx[c2]);
    }
    out.values = std::move(sorted);
    out.vectors = std::move(vs);
    return out;
}

/// Lower-triangular factor L with A ~= L L^T. Tolerates semidefinite input:
/// pivots below eps are zeroed (their columns become 0). Throws if a pivot is
/// significantly negative.
inline Mat cholesky_psd(const Mat& a, double eps = 1e-10) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("cholesky_psd: square matrix required");
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a.at(i, i)));
    Mat l(n, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l.at(j, k) * l.at(j, k);
        if (d < -eps * scale) throw std::invalid_argument("cholesky_psd: matrix not PSD");
        if (d <= eps * scale) {
            // null direction; leave the column zero
            continue;
        }
        double ljj = std::sqrt(d);
        l.at(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
            l.at(i, j) = s / ljj;
        }
    }
    return l;
}

}  // namespace wigner
