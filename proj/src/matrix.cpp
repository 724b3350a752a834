#include "lstmcs/matrix.hpp"

#include <cmath>

#include "lstmcs/errors.hpp"

namespace lstmcs {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::string Matrix::shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Vector Matrix::col(std::size_t j) const {
    if (j >= cols_) throw ShapeError("column index " + std::to_string(j) + " out of range for " + shape_str());
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = data_[r * cols_ + j];
    return v;
}

void Matrix::set_col(std::size_t j, const Vector& v) {
    if (j >= cols_ || v.size() != rows_)
        throw ShapeError("set_col: vector of length " + std::to_string(v.size()) + " into column " +
                         std::to_string(j) + " of " + shape_str());
    for (std::size_t r = 0; r < rows_; ++r) data_[r * cols_ + j] = v[r];
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

bool Matrix::all_finite() const {
    for (double x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace lstmcs
