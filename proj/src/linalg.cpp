#include "lstmcs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lstmcs/errors.hpp"

namespace lstmcs {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: " + a.shape_str() + " * " + b.shape_str());
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size())
        throw ShapeError("matvec: " + a.shape_str() + " * vector of length " + std::to_string(x.size()));
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.data() + i * a.cols();
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_t(const Matrix& a, const Vector& x) {
    if (a.rows() != x.size())
        throw ShapeError("matvec_t: " + a.shape_str() + "^T * vector of length " + std::to_string(x.size()));
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.data() + i * a.cols();
        const double xi = x[i];
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += row[j] * xi;
    }
    return y;
}

Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& idx) {
    Matrix s(a.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= a.cols())
            throw ShapeError("select_columns: index " + std::to_string(idx[j]) + " out of range for " +
                             a.shape_str());
        for (std::size_t r = 0; r < a.rows(); ++r) s(r, j) = a(r, idx[j]);
    }
    return s;
}

Vector least_squares_solve(const Matrix& a_sub, const Vector& y) {
    const std::size_t m = a_sub.rows(), n = a_sub.cols();
    if (y.size() != m)
        throw ShapeError("least_squares_solve: " + a_sub.shape_str() + " vs rhs of length " +
                         std::to_string(y.size()));
    if (n > m)
        throw ShapeError("least_squares_solve: underdetermined system " + a_sub.shape_str());
    const double tol = 1e-12 * a_sub.frobenius_norm();

    Matrix r = a_sub;
    Vector qty = y;
    // Householder triangularization, reflector applied to the rhs in lockstep
    for (std::size_t k = 0; k < n; ++k) {
        double sigma = 0.0;
        for (std::size_t i = k; i < m; ++i) sigma += r(i, k) * r(i, k);
        double alpha = std::sqrt(sigma);
        if (alpha <= tol)
            throw SingularError("least_squares_solve: rank-deficient at column " + std::to_string(k) +
                                " (|R_kk| = " + std::to_string(alpha) + ")",
                                k);
        if (r(k, k) > 0.0) alpha = -alpha;
        Vector v(m - k);
        v[0] = r(k, k) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i - k] = r(i, k);
        double vnorm2 = 0.0;
        for (double t : v) vnorm2 += t * t;
        r(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
        if (vnorm2 == 0.0) continue;
        for (std::size_t j = k + 1; j < n; ++j) {
            double w = 0.0;
            for (std::size_t i = k; i < m; ++i) w += v[i - k] * r(i, j);
            w *= 2.0 / vnorm2;
            for (std::size_t i = k; i < m; ++i) r(i, j) -= w * v[i - k];
        }
        double w = 0.0;
        for (std::size_t i = k; i < m; ++i) w += v[i - k] * qty[i];
        w *= 2.0 / vnorm2;
        for (std::size_t i = k; i < m; ++i) qty[i] -= w * v[i - k];
    }

    Vector x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = qty[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= r(k, j) * x[j];
        x[k] = s / r(k, k);
    }
    return x;
}

Vector softmax(const Vector& z) {
    if (z.empty()) throw ShapeError("softmax: empty input");
    const double zmax = *std::max_element(z.begin(), z.end());
    Vector p(z.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - zmax);
        sum += p[i];
    }
    for (double& t : p) t /= sum;
    return p;
}

Vector sigmoid(const Vector& x) {
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1.0 / (1.0 + std::exp(-x[i]));
    return y;
}

Vector tanh_vec(const Vector& x) {
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::tanh(x[i]);
    return y;
}

Vector hadamard(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw ShapeError("hadamard: lengths " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * b[i];
    return c;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw ShapeError("dot: lengths " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void axpy(double alpha, const Vector& x, Vector& y) {
    if (x.size() != y.size())
        throw ShapeError("axpy: lengths " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace lstmcs
