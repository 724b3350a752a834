#include "lstmcs/image_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "lstmcs/errors.hpp"

namespace lstmcs {

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to " + path);
}

IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4) throw ParseError("idx: truncated header");
    if (bytes[0] != 0 || bytes[1] != 0) throw ParseError("idx: bad magic prefix");
    if (bytes[2] != 0x08) throw ParseError("idx: unsupported element type " + std::to_string(bytes[2]));
    const std::size_t rank = bytes[3];
    if (rank == 0 || rank > 3) throw ParseError("idx: unsupported rank " + std::to_string(rank));
    if (bytes.size() < 4 + 4 * rank) throw ParseError("idx: truncated dimension list");

    IdxTensor t;
    std::size_t total = 1;
    for (std::size_t d = 0; d < rank; ++d) {
        const std::size_t off = 4 + 4 * d;
        const std::size_t v = (std::size_t(bytes[off]) << 24) | (std::size_t(bytes[off + 1]) << 16) |
                              (std::size_t(bytes[off + 2]) << 8) | std::size_t(bytes[off + 3]);
        t.dims.push_back(v);
        total *= v;
    }
    const std::size_t payload = 4 + 4 * rank;
    if (bytes.size() != payload + total)
        throw ParseError("idx: payload of " + std::to_string(bytes.size() - payload) +
                         " bytes does not match dims product " + std::to_string(total));
    t.raw.assign(bytes.begin() + static_cast<std::ptrdiff_t>(payload), bytes.end());
    return t;
}

IdxTensor ingest_idx(const std::string& path) {
    try {
        return parse_idx(read_file_bytes(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace {

// PGM token scanner: whitespace separates tokens, '#' comments run to newline
std::size_t next_token(const std::vector<std::uint8_t>& b, std::size_t pos, std::string& tok) {
    while (pos < b.size()) {
        if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else if (std::isspace(b[pos])) {
            ++pos;
        } else {
            break;
        }
    }
    tok.clear();
    while (pos < b.size() && !std::isspace(b[pos]) && b[pos] != '#') tok.push_back(char(b[pos++]));
    if (tok.empty()) throw ParseError("pgm: truncated header");
    return pos;
}

std::size_t parse_pgm_count(const std::string& tok) {
    std::size_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw ParseError("pgm: non-numeric header token '" + tok + "'");
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

}  // namespace

Matrix parse_pgm(const std::vector<std::uint8_t>& bytes) {
    std::string tok;
    std::size_t pos = next_token(bytes, 0, tok);
    if (tok != "P5") throw ParseError("pgm: not a binary P5 file (got '" + tok + "')");
    pos = next_token(bytes, pos, tok);
    const std::size_t width = parse_pgm_count(tok);
    pos = next_token(bytes, pos, tok);
    const std::size_t height = parse_pgm_count(tok);
    pos = next_token(bytes, pos, tok);
    const std::size_t maxval = parse_pgm_count(tok);
    if (maxval == 0 || maxval > 255)
        throw ParseError("pgm: maxval " + std::to_string(maxval) + " outside 1..255");
    if (width == 0 || height == 0) throw ParseError("pgm: zero dimension");
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw ParseError("pgm: missing pixel separator");
    ++pos;
    if (bytes.size() - pos != width * height)
        throw ParseError("pgm: expected " + std::to_string(width * height) + " pixel bytes, have " +
                         std::to_string(bytes.size() - pos));

    Matrix img(height, width);
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c)
            img(r, c) = static_cast<double>(bytes[pos + r * width + c]) / static_cast<double>(maxval);
    return img;
}

Matrix ingest_pgm(const std::string& path) {
    try {
        return parse_pgm(read_file_bytes(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<std::uint8_t> serialize_pgm(const Matrix& image) {
    if (image.rows() == 0 || image.cols() == 0) throw ShapeError("pgm: empty image");
    char header[64];
    const int len = std::snprintf(header, sizeof header, "P5\n%zu %zu\n255\n", image.cols(), image.rows());
    std::vector<std::uint8_t> out(header, header + len);
    out.reserve(out.size() + image.size());
    for (std::size_t r = 0; r < image.rows(); ++r)
        for (std::size_t c = 0; c < image.cols(); ++c) {
            double v = image(r, c);
            v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
            out.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
        }
    return out;
}

void emit_pgm(const Matrix& image, const std::string& path) {
    write_file_bytes(path, serialize_pgm(image));
}

}  // namespace lstmcs
