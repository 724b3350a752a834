#include <cmath>

#include "doctest.h"
#include "lstmcs/errors.hpp"
#include "lstmcs/linalg.hpp"
#include "lstmcs/rng.hpp"

using namespace lstmcs;

namespace {

// independent oracle: textbook triple loop, no blocking, no reordering
Matrix matmul_naive(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

// independent oracle: normal equations A^T A x = A^T y solved by Cramer's rule,
// fixed at 3 unknowns
Vector normal_eq_cramer_3(const Matrix& a, const Vector& y) {
    double g[3][3];
    double rhs[3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < a.rows(); ++r) s += a(r, i) * a(r, j);
            g[i][j] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) s += a(r, i) * y[r];
        rhs[i] = s;
    }
    auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double d = det3(g);
    Vector x(3);
    for (int k = 0; k < 3; ++k) {
        double gk[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gk[i][j] = (j == k) ? rhs[i] : g[i][j];
        x[k] = det3(gk) / d;
    }
    return x;
}

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.gaussian();
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("matmul identity and hand sums") {
    Rng rng(11);
    Matrix a = random_matrix(4, 4, rng);
    Matrix c = matmul(a, Matrix::identity(4));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(c.data()[i] == a.data()[i]);

    Matrix m(2, 2);
    m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 3; m(1, 1) = 4;
    Matrix ones(2, 1, 1.0);
    Matrix r = matmul(m, ones);
    CHECK(r(0, 0) == 3.0);
    CHECK(r(1, 0) == 7.0);
}

TEST_CASE("matmul matches naive oracle exactly") {
    Rng rng(42);
    Matrix a = random_matrix(5, 4, rng);
    Matrix b = random_matrix(4, 3, rng);
    Matrix c = matmul(a, b);
    Matrix o = matmul_naive(a, b);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.data()[i] == doctest::Approx(o.data()[i]).epsilon(1e-15));
}

TEST_CASE("matmul shape error names both operands") {
    Matrix a(5, 4), b(3, 2);
    CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("5x4"), ShapeError);
    try {
        matmul(a, b);
    } catch (const ShapeError& e) {
        CHECK(std::string(e.what()).find("3x2") != std::string::npos);
    }
}

TEST_CASE("matmul associativity within 1e-9 relative") {
    Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix a = random_matrix(4, 5, rng), b = random_matrix(5, 3, rng), c = random_matrix(3, 6, rng);
        Matrix left = matmul(matmul(a, b), c);
        Matrix right = matmul(a, matmul(b, c));
        double scale = left.frobenius_norm();
        for (std::size_t i = 0; i < left.size(); ++i)
            CHECK(std::abs(left.data()[i] - right.data()[i]) <= 1e-9 * scale);
    }
}

TEST_CASE("matvec and matvec_t agree with matmul") {
    Rng rng(13);
    Matrix a = random_matrix(6, 4, rng);
    Vector x(4), z(6);
    for (auto& t : x) t = rng.gaussian();
    for (auto& t : z) t = rng.gaussian();
    Vector y = matvec(a, x);
    for (std::size_t i = 0; i < 6; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 4; ++j) s += a(i, j) * x[j];
        CHECK(y[i] == doctest::Approx(s).epsilon(1e-15));
    }
    Vector w = matvec_t(a, z);
    for (std::size_t j = 0; j < 4; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 6; ++i) s += a(i, j) * z[i];
        CHECK(w[j] == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("least squares: identity system returns rhs") {
    Vector y{1.5, -2.0, 0.25};
    Vector x = least_squares_solve(Matrix::identity(3), y);
    for (int i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-14));
}

TEST_CASE("least squares: single ones column gives the mean") {
    Matrix a(5, 1, 1.0);
    Vector y{1, 2, 3, 4, 10};
    Vector x = least_squares_solve(a, y);
    CHECK(x[0] == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("least squares matches Cramer normal equations on 6x3") {
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a = random_matrix(6, 3, rng);
        Vector y(6);
        for (auto& t : y) t = rng.gaussian();
        Vector x = least_squares_solve(a, y);
        Vector o = normal_eq_cramer_3(a, y);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(x[i] - o[i]) <= 1e-10 * (1.0 + std::abs(o[i])));
    }
}

TEST_CASE("least squares residual is orthogonal to the column span") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a = random_matrix(8, 4, rng);
        Vector y(8);
        for (auto& t : y) t = rng.gaussian();
        Vector x = least_squares_solve(a, y);
        Vector r = y;
        axpy(-1.0, matvec(a, x), r);
        for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(dot(a.col(j), r)) <= 1e-9 * norm2(y));
    }
}

TEST_CASE("least squares flags a duplicated column with its index") {
    Rng rng(3);
    Matrix a = random_matrix(6, 3, rng);
    for (std::size_t i = 0; i < 6; ++i) a(i, 2) = a(i, 0);
    Vector y(6, 1.0);
    try {
        least_squares_solve(a, y);
        FAIL("expected SingularError");
    } catch (const SingularError& e) {
        CHECK(e.column == 2);
    }
}

TEST_CASE("least squares rejects underdetermined and mismatched systems") {
    CHECK_THROWS_AS(least_squares_solve(Matrix(2, 3), Vector(2, 1.0)), ShapeError);
    CHECK_THROWS_AS(least_squares_solve(Matrix(4, 2), Vector(3, 1.0)), ShapeError);
}

TEST_CASE("softmax fixed points") {
    Vector p = softmax(Vector{0, 0, 0, 0});
    for (double t : p) CHECK(t == doctest::Approx(0.25).epsilon(1e-14));

    Vector q = softmax(Vector{0.0, std::log(3.0)});
    CHECK(q[0] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(q[1] == doctest::Approx(0.75).epsilon(1e-13));

    Vector r = softmax(Vector{1000.0, 1000.0});
    CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("softmax sums to one and is shift invariant") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        Vector z(9);
        for (auto& t : z) t = 10.0 * rng.gaussian();
        Vector p = softmax(z);
        double s = 0.0;
        for (double t : p) {
            CHECK(t >= 0.0);
            s += t;
        }
        CHECK(std::abs(s - 1.0) <= 1e-12);
        Vector zs = z;
        for (auto& t : zs) t += 123.456;
        Vector ps = softmax(zs);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - ps[i]) <= 1e-12);
    }
}

TEST_CASE("elementwise kernels") {
    CHECK(sigmoid(Vector{0.0})[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tanh_vec(Vector{0.0})[0] == 0.0);
    Vector h = hadamard(Vector{1, 2, 3}, Vector{4, 5, 6});
    CHECK(h == Vector{4, 10, 18});
    CHECK_THROWS_AS(hadamard(Vector{1, 2}, Vector{1}), ShapeError);
    CHECK_THROWS_AS(dot(Vector{1, 2}, Vector{1}), ShapeError);
}

TEST_CASE("select_columns preserves order and validates indices") {
    Rng rng(17);
    Matrix a = random_matrix(4, 5, rng);
    Matrix s = select_columns(a, {3, 0});
    for (std::size_t r = 0; r < 4; ++r) {
        CHECK(s(r, 0) == a(r, 3));
        CHECK(s(r, 1) == a(r, 0));
    }
    CHECK_THROWS_AS(select_columns(a, {5}), ShapeError);
}

TEST_SUITE_END();
