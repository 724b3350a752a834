#pragma once

#include <cstddef>
#include <vector>

#include "lstmcs/matrix.hpp"

namespace lstmcs {

Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
// returns A^T x without materializing the transpose
Vector matvec_t(const Matrix& a, const Vector& x);

// new matrix from the listed columns of a, in the given order
Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& idx);

// minimizes ||a_sub * x - y||_2 via Householder QR; requires rows >= cols.
// Throws SingularError naming the offending column when a diagonal of R falls
// below 1e-12 * ||a_sub||_F.
Vector least_squares_solve(const Matrix& a_sub, const Vector& y);

// max-shifted, safe for large-magnitude logits; entries sum to 1
Vector softmax(const Vector& z);

Vector sigmoid(const Vector& x);
Vector tanh_vec(const Vector& x);
Vector hadamard(const Vector& a, const Vector& b);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double max_abs(const Vector& v);
void axpy(double alpha, const Vector& x, Vector& y);  // y += alpha * x

}  // namespace lstmcs
