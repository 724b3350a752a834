#include "lstmcs/transforms.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "lstmcs/errors.hpp"

namespace lstmcs {

TransformKind parse_transform(const std::string& s) {
    if (s == "none") return TransformKind::none;
    if (s == "dct") return TransformKind::dct;
    if (s == "haar3") return TransformKind::haar3;
    throw ConfigError("unknown transform: " + s);
}

std::string transform_name(TransformKind k) {
    switch (k) {
        case TransformKind::none: return "none";
        case TransformKind::dct: return "dct";
        case TransformKind::haar3: return "haar3";
    }
    return "none";
}

Matrix dct_matrix(std::size_t b) {
    Matrix d(b, b);
    const double bd = static_cast<double>(b);
    for (std::size_t k = 0; k < b; ++k) {
        const double alpha = std::sqrt((k == 0 ? 1.0 : 2.0) / bd);
        for (std::size_t n = 0; n < b; ++n)
            d(k, n) = alpha * std::cos(std::numbers::pi * (2.0 * n + 1.0) * k / (2.0 * bd));
    }
    return d;
}

namespace {

void check_blocking(const Matrix& image, std::size_t block) {
    if (block == 0 || image.rows() % block != 0 || image.cols() % block != 0)
        throw ShapeError("image " + image.shape_str() + " not divisible into " + std::to_string(block) +
                         "-sized blocks");
}

// single orthonormal Haar split on the first `len` entries of a strided view
void haar_step(double* x, std::size_t stride, std::size_t len, bool forward) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::vector<double> tmp(len);
    if (forward) {
        for (std::size_t p = 0; p < len / 2; ++p) {
            const double a = x[2 * p * stride], b = x[(2 * p + 1) * stride];
            tmp[p] = (a + b) * inv_sqrt2;
            tmp[len / 2 + p] = (a - b) * inv_sqrt2;
        }
    } else {
        for (std::size_t p = 0; p < len / 2; ++p) {
            const double a = x[p * stride], d = x[(len / 2 + p) * stride];
            tmp[2 * p] = (a + d) * inv_sqrt2;
            tmp[2 * p + 1] = (a - d) * inv_sqrt2;
        }
    }
    for (std::size_t i = 0; i < len; ++i) x[i * stride] = tmp[i];
}

void haar3_block(Matrix& img, std::size_t r0, std::size_t c0, std::size_t block, bool forward) {
    auto at = [&](std::size_t r, std::size_t c) -> double* { return &img(r0 + r, c0 + c); };
    if (forward) {
        for (std::size_t s = block; s >= block / 4; s /= 2) {
            for (std::size_t r = 0; r < s; ++r) haar_step(at(r, 0), 1, s, true);
            for (std::size_t c = 0; c < s; ++c) haar_step(at(0, c), img.cols(), s, true);
        }
    } else {
        for (std::size_t s = block / 4; s <= block; s *= 2) {
            for (std::size_t c = 0; c < s; ++c) haar_step(at(0, c), img.cols(), s, false);
            for (std::size_t r = 0; r < s; ++r) haar_step(at(r, 0), 1, s, false);
        }
    }
}

void dct_block(Matrix& img, std::size_t r0, std::size_t c0, const Matrix& d, bool forward) {
    const std::size_t b = d.rows();
    Matrix x(b, b);
    for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = 0; c < b; ++c) x(r, c) = img(r0 + r, c0 + c);
    // forward: D X D^T, inverse: D^T X D
    Matrix y(b, b);
    for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = 0; c < b; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < b; ++k) s += (forward ? d(r, k) : d(k, r)) * x(k, c);
            y(r, c) = s;
        }
    for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = 0; c < b; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < b; ++k) s += y(r, k) * (forward ? d(c, k) : d(k, c));
            img(r0 + r, c0 + c) = s;
        }
}

}  // namespace

Matrix block_transform(const Matrix& image, std::size_t block, TransformKind kind, bool forward) {
    check_blocking(image, block);
    if (kind == TransformKind::none) return image;
    if (kind == TransformKind::haar3 && block % 8 != 0)
        throw ConfigError("haar3 needs block divisible by 8, got " + std::to_string(block));
    Matrix out = image;
    Matrix d;
    if (kind == TransformKind::dct) d = dct_matrix(block);
    for (std::size_t r0 = 0; r0 < image.rows(); r0 += block)
        for (std::size_t c0 = 0; c0 < image.cols(); c0 += block) {
            if (kind == TransformKind::dct)
                dct_block(out, r0, c0, d, forward);
            else
                haar3_block(out, r0, c0, block, forward);
        }
    return out;
}

Matrix blockize(const Matrix& image, std::size_t block) {
    check_blocking(image, block);
    const std::size_t brows = image.rows() / block, bcols = image.cols() / block;
    Matrix out(block * block, brows * bcols);
    for (std::size_t br = 0; br < brows; ++br)
        for (std::size_t bc = 0; bc < bcols; ++bc) {
            const std::size_t j = br * bcols + bc;
            for (std::size_t c = 0; c < block; ++c)
                for (std::size_t r = 0; r < block; ++r)
                    out(c * block + r, j) = image(br * block + r, bc * block + c);
        }
    return out;
}

Matrix deblockize(const Matrix& cols, std::size_t rows, std::size_t colcount, std::size_t block) {
    if (block == 0 || rows % block != 0 || colcount % block != 0)
        throw ShapeError("target " + std::to_string(rows) + "x" + std::to_string(colcount) +
                         " not divisible into " + std::to_string(block) + "-sized blocks");
    const std::size_t brows = rows / block, bcols = colcount / block;
    if (cols.rows() != block * block || cols.cols() != brows * bcols)
        throw ShapeError("deblockize: got " + cols.shape_str() + ", expected " +
                         std::to_string(block * block) + "x" + std::to_string(brows * bcols));
    Matrix img(rows, colcount);
    for (std::size_t br = 0; br < brows; ++br)
        for (std::size_t bc = 0; bc < bcols; ++bc) {
            const std::size_t j = br * bcols + bc;
            for (std::size_t c = 0; c < block; ++c)
                for (std::size_t r = 0; r < block; ++r)
                    img(br * block + r, bc * block + c) = cols(c * block + r, j);
        }
    return img;
}

}  // namespace lstmcs
