#pragma once

#include <cstddef>
#include <vector>

#include "lstmcs/lstm.hpp"
#include "lstmcs/matrix.hpp"

namespace lstmcs {

struct SolverConfig {
    std::size_t k_max = 0;     // support budget per channel; must be <= rows of A
    double res_min = 1e-9;     // stop once ||R||_F falls to or below this
    bool shared_support = false;  // lstm solver only: one support set for all channels
};

struct SolverResult {
    Matrix shat;                                      // n x l estimate
    std::vector<std::vector<std::size_t>> supports;   // per channel, in selection order
    std::vector<double> residual_norms;               // ||R||_F after each outer iteration
    std::size_t iterations = 0;
    double wall_seconds = 0.0;
};

// greedy decoder around the recurrence: per outer iteration the state is
// zeroed, channels are visited left to right feeding max-abs-normalized
// residuals, and each channel appends its highest-probability unused index
// before a least-squares refit
SolverResult lstm_cs_solve(const Matrix& a, const Matrix& y, const LstmParams& model,
                           const SolverConfig& cfg);

// single-channel greedy pursuit on |a_i^T r|
SolverResult omp_solve(const Matrix& a, const Vector& y, const SolverConfig& cfg);

// runs omp_solve independently on every column
SolverResult omp_solve_mmv(const Matrix& a, const Matrix& y, const SolverConfig& cfg);

// simultaneous pursuit: one shared support grown by argmax of the summed
// absolute correlations across channels
SolverResult somp_solve(const Matrix& a, const Matrix& y, const SolverConfig& cfg);

struct OracleResult {
    std::vector<std::size_t> support;  // ascending
    Vector coeffs;                     // aligned with support
    double residual_norm = 0.0;
};

// enumerates every k-subset (guarded to 1e6 subsets), returning the
// least-squares best; ties go to the lexicographically smallest subset
OracleResult exhaustive_oracle(const Matrix& a, const Vector& y, std::size_t k);

}  // namespace lstmcs
