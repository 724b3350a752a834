#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lstmcs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dimension mismatch; message names both shapes
struct ShapeError : Error {
    using Error::Error;
};

// rank deficiency in a least-squares system; carries the offending column
struct SingularError : Error {
    SingularError(const std::string& msg, std::size_t col) : Error(msg), column(col) {}
    std::size_t column;
};

// invalid configuration value or combination
struct ConfigError : Error {
    using Error::Error;
};

// undefined metric request (zero reference signal, non-positive SNR input, ...)
struct DomainError : Error {
    using Error::Error;
};

// malformed external input (IDX, PGM, CSV, config text)
struct ParseError : Error {
    using Error::Error;
};

// model file load failure; kind distinguishes the three contract violations
struct ModelIoError : ParseError {
    enum class Kind { bad_magic, bad_crc, truncated };
    ModelIoError(const std::string& msg, Kind k) : ParseError(msg), kind(k) {}
    Kind kind;
};

}  // namespace lstmcs
