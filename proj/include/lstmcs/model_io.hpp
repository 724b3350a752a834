#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstmcs/lstm.hpp"

namespace lstmcs {

// standard reflected CRC-32 (polynomial 0xEDB88320, init/final 0xFFFFFFFF)
std::uint32_t crc32(const std::uint8_t* data, std::size_t len);

// file layout: "LSTMCS01" magic, five little-endian u32 fields
// (m, n, ncell, variant code, reserved zero), tensors in canonical order as
// row-major little-endian f64, trailing CRC-32 of everything after the magic
std::vector<std::uint8_t> serialize_model(const LstmParams& params);
LstmParams parse_model(const std::vector<std::uint8_t>& bytes);

std::size_t model_file_size(const LstmDims& dims);

void save_model(const LstmParams& params, const std::string& path);
LstmParams load_model(const std::string& path);

}  // namespace lstmcs
