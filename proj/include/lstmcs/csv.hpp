#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstmcs/matrix.hpp"

namespace lstmcs {

// one record per (solver, grid point, trial); wall_time_s is the only
// non-deterministic column
struct ResultRow {
    std::string experiment;
    std::string solver;
    std::size_t k = 0;
    double m_over_n = 0.0;
    double sigma = 0.0;
    std::uint64_t trial = 0;  // per-trial derived seed
    double nmse = 0.0;
    bool recovered = false;   // nmse <= 0.6
    double wall_time_s = 0.0;
};

inline constexpr const char* kResultHeader =
    "experiment,solver,k,m_over_n,sigma,trial,nmse,recovered,wall_time_s";

std::string result_csv(const std::vector<ResultRow>& rows);

// headerless numeric matrix, one row per line
std::string matrix_csv(const Matrix& m);
Matrix parse_matrix_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace lstmcs
