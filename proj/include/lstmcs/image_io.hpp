#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstmcs/matrix.hpp"

namespace lstmcs {

// big-endian IDX container: 00 00 <type> <rank>, then rank u32 dims, then payload
struct IdxTensor {
    std::vector<std::size_t> dims;
    std::vector<std::uint8_t> raw;

    std::size_t size() const { return raw.size(); }
    // pixel view scaled to [0, 1]
    double unit(std::size_t flat) const { return static_cast<double>(raw[flat]) / 255.0; }
};

IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes);
IdxTensor ingest_idx(const std::string& path);

// binary PGM (P5), maxval <= 255; pixels come back in [0, 1]
Matrix parse_pgm(const std::vector<std::uint8_t>& bytes);
Matrix ingest_pgm(const std::string& path);

// canonical emission: "P5\n<w> <h>\n255\n" + rows, nearest-level rounding
std::vector<std::uint8_t> serialize_pgm(const Matrix& image);
void emit_pgm(const Matrix& image, const std::string& path);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace lstmcs
