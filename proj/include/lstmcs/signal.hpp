#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstmcs/matrix.hpp"

namespace lstmcs {

enum class SparsityPattern { joint, independent, image_derived };
enum class AmplitudeLaw { uniform_signed, gaussian };

SparsityPattern parse_pattern(const std::string& s);
std::string pattern_name(SparsityPattern p);
AmplitudeLaw parse_amplitude_law(const std::string& s);
std::string amplitude_law_name(AmplitudeLaw a);

// column-normalized Gaussian measurement operator
struct MeasurementEnsemble {
    Matrix a;  // m x n, unit l2 columns
    std::uint64_t seed = 0;
};

struct SparseEnsemble {
    Matrix s;  // n x l
    SparsityPattern pattern = SparsityPattern::joint;
    std::vector<std::size_t> k_per_channel;
    std::uint64_t seed = 0;
};

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

MeasurementEnsemble gen_measurement_ensemble(std::size_t m, std::size_t n, std::uint64_t seed);

// k non-zeros per channel; joint reuses one support across channels,
// independent redraws it. uniform_signed amplitudes are uniform [0.5, 1.5]
// with a random sign, gaussian amplitudes are standard normal.
SparseEnsemble gen_sparse_ensemble(std::size_t n, std::size_t l, std::size_t k, SparsityPattern pattern,
                                   AmplitudeLaw law, std::uint64_t seed);

// Y = A * S, plus i.i.d. N(0, sigma^2) noise when sigma > 0 (filled in
// row-major order from the noise seed); sigma = 0 is exact
Matrix measure(const MeasurementEnsemble& a, const Matrix& s, const NoiseSpec& noise);

// ||s_hat - s_true||_F / ||s_true||_F; zero reference is a domain error
double nmse(const Matrix& s_true, const Matrix& s_hat);

// 10 log10(signal_power / sigma^2)
double snr_of(double sigma, double signal_power);

double mean_square(const Matrix& m);

}  // namespace lstmcs
