#include "lstmcs/model_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "lstmcs/errors.hpp"

namespace lstmcs {

namespace {

constexpr char kMagic[8] = {'L', 'S', 'T', 'M', 'C', 'S', '0', '1'};

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t n = 0; n < 256; ++n) {
        std::uint32_t c = n;
        for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[n] = c;
    }
    return table;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_f64(std::vector<std::uint8_t>& out, double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xFF));
}

double get_f64(const std::uint8_t* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    static const auto table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i) c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::size_t model_file_size(const LstmDims& d) {
    const std::size_t doubles =
        4 * d.ncell * d.m + 7 * d.ncell * d.ncell + 4 * d.ncell + d.n * d.ncell;
    return 8 + 20 + 8 * doubles + 4;
}

std::vector<std::uint8_t> serialize_model(const LstmParams& params) {
    std::vector<std::uint8_t> out;
    out.reserve(model_file_size(params.dims));
    out.insert(out.end(), kMagic, kMagic + 8);
    put_u32(out, static_cast<std::uint32_t>(params.dims.m));
    put_u32(out, static_cast<std::uint32_t>(params.dims.n));
    put_u32(out, static_cast<std::uint32_t>(params.dims.ncell));
    put_u32(out, static_cast<std::uint32_t>(params.variant));
    put_u32(out, 0);  // reserved
    auto w = params.w;
    for (const auto& ref : tensor_refs(w))
        for (std::size_t i = 0; i < ref.size; ++i) put_f64(out, ref.data[i]);
    const std::uint32_t crc = crc32(out.data() + 8, out.size() - 8);
    put_u32(out, crc);
    return out;
}

LstmParams parse_model(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 8) != 0)
        throw ModelIoError("model stream does not start with the LSTMCS01 magic",
                           ModelIoError::Kind::bad_magic);
    if (bytes.size() < 8 + 20 + 4)
        throw ModelIoError("model stream truncated before header end", ModelIoError::Kind::truncated);

    LstmDims dims;
    dims.m = get_u32(bytes.data() + 8);
    dims.n = get_u32(bytes.data() + 12);
    dims.ncell = get_u32(bytes.data() + 16);
    const std::uint32_t variant_code = get_u32(bytes.data() + 20);
    if (variant_code > 1)
        throw ParseError("unknown variant code " + std::to_string(variant_code));

    const std::size_t expect = model_file_size(dims);
    if (bytes.size() < expect)
        throw ModelIoError("model stream truncated: " + std::to_string(bytes.size()) + " of " +
                           std::to_string(expect) + " bytes",
                           ModelIoError::Kind::truncated);
    if (bytes.size() > expect)
        throw ParseError("model stream has " + std::to_string(bytes.size() - expect) + " trailing bytes");

    const std::uint32_t stored = get_u32(bytes.data() + expect - 4);
    const std::uint32_t actual = crc32(bytes.data() + 8, expect - 12);
    if (stored != actual)
        throw ModelIoError("model checksum mismatch", ModelIoError::Kind::bad_crc);

    LstmParams p;
    p.dims = dims;
    p.variant = static_cast<Variant>(variant_code);
    p.w = make_zero_weights(dims);
    const std::uint8_t* cur = bytes.data() + 28;
    for (const auto& ref : tensor_refs(p.w))
        for (std::size_t i = 0; i < ref.size; ++i, cur += 8) ref.data[i] = get_f64(cur);
    return p;
}

void save_model(const LstmParams& params, const std::string& path) {
    const auto bytes = serialize_model(params);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to " + path);
}

LstmParams load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_model(bytes);
}

}  // namespace lstmcs
