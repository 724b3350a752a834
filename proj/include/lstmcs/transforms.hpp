#pragma once

#include <string>

#include "lstmcs/matrix.hpp"

namespace lstmcs {

enum class TransformKind { none, dct, haar3 };

TransformKind parse_transform(const std::string& s);
std::string transform_name(TransformKind k);

// orthonormal DCT-II basis, rows indexed by frequency
Matrix dct_matrix(std::size_t b);

// applies the transform to every block x block tile of the image; image
// dimensions must be divisible by block, and haar3 additionally needs
// block % 8 == 0 for its three halving levels
Matrix block_transform(const Matrix& image, std::size_t block, TransformKind kind, bool forward);

// columns are the tiles vectorized column-major, tiles ordered row-major
// across the image: 24x24 with block 12 -> 144x4
Matrix blockize(const Matrix& image, std::size_t block);
Matrix deblockize(const Matrix& cols, std::size_t rows, std::size_t colcount, std::size_t block);

}  // namespace lstmcs
