#include "lstmcs/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lstmcs/errors.hpp"
#include "lstmcs/linalg.hpp"
#include "lstmcs/rng.hpp"

namespace lstmcs {

SparsityPattern parse_pattern(const std::string& s) {
    if (s == "joint") return SparsityPattern::joint;
    if (s == "independent") return SparsityPattern::independent;
    if (s == "image_derived") return SparsityPattern::image_derived;
    throw ConfigError("unknown sparsity pattern: " + s);
}

AmplitudeLaw parse_amplitude_law(const std::string& s) {
    if (s == "uniform") return AmplitudeLaw::uniform_signed;
    if (s == "gaussian") return AmplitudeLaw::gaussian;
    throw ConfigError("unknown amplitude law: " + s);
}

std::string pattern_name(SparsityPattern p) {
    switch (p) {
        case SparsityPattern::joint: return "joint";
        case SparsityPattern::independent: return "independent";
        case SparsityPattern::image_derived: return "image_derived";
    }
    throw ConfigError("bad sparsity pattern value");
}

std::string amplitude_law_name(AmplitudeLaw a) {
    switch (a) {
        case AmplitudeLaw::uniform_signed: return "uniform";
        case AmplitudeLaw::gaussian: return "gaussian";
    }
    throw ConfigError("bad amplitude law value");
}

MeasurementEnsemble gen_measurement_ensemble(std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m == 0 || n == 0 || m > n)
        throw ConfigError("measurement ensemble needs 0 < m <= n, got m=" + std::to_string(m) +
                          " n=" + std::to_string(n));
    Rng rng(seed);
    Matrix a(m, n);
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = rng.gaussian();
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
        const double norm = std::sqrt(s);
        if (norm == 0.0) throw Error("degenerate zero column in measurement draw");
        for (std::size_t i = 0; i < m; ++i) a(i, j) /= norm;
    }
    return {std::move(a), seed};
}

namespace {

std::vector<std::size_t> draw_support(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

double draw_amplitude(AmplitudeLaw law, Rng& rng) {
    if (law == AmplitudeLaw::gaussian) return rng.gaussian();
    const double mag = rng.uniform(0.5, 1.5);
    return rng.uniform01() < 0.5 ? -mag : mag;
}

}  // namespace

SparseEnsemble gen_sparse_ensemble(std::size_t n, std::size_t l, std::size_t k, SparsityPattern pattern,
                                   AmplitudeLaw law, std::uint64_t seed) {
    if (pattern == SparsityPattern::image_derived)
        throw ConfigError("image_derived ensembles come from ingested data, not the generator");
    if (l == 0 || n == 0) throw ConfigError("sparse ensemble needs n > 0 and l > 0");
    if (k > n) throw ConfigError("sparsity k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    Rng rng(seed);
    SparseEnsemble e;
    e.s = Matrix(n, l);
    e.pattern = pattern;
    e.seed = seed;
    e.k_per_channel.assign(l, k);
    std::vector<std::size_t> support;
    if (pattern == SparsityPattern::joint) support = draw_support(n, k, rng);
    for (std::size_t j = 0; j < l; ++j) {
        if (pattern == SparsityPattern::independent) support = draw_support(n, k, rng);
        for (std::size_t idx : support) e.s(idx, j) = draw_amplitude(law, rng);
    }
    return e;
}

Matrix measure(const MeasurementEnsemble& a, const Matrix& s, const NoiseSpec& noise) {
    if (a.a.cols() != s.rows())
        throw ShapeError("measure: ensemble " + a.a.shape_str() + " vs signal " + s.shape_str());
    if (noise.sigma < 0.0) throw ConfigError("noise sigma must be >= 0");
    Matrix y = matmul(a.a, s);
    if (noise.sigma > 0.0) {
        Rng rng(noise.seed);
        for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] += noise.sigma * rng.gaussian();
    }
    return y;
}

double nmse(const Matrix& s_true, const Matrix& s_hat) {
    if (!s_true.same_shape(s_hat))
        throw ShapeError("nmse: " + s_true.shape_str() + " vs " + s_hat.shape_str());
    const double ref = s_true.frobenius_norm();
    if (ref == 0.0) throw DomainError("nmse undefined for a zero reference signal");
    double s = 0.0;
    for (std::size_t i = 0; i < s_true.size(); ++i) {
        const double d = s_hat.data()[i] - s_true.data()[i];
        s += d * d;
    }
    return std::sqrt(s) / ref;
}

double snr_of(double sigma, double signal_power) {
    if (sigma <= 0.0) throw DomainError("snr undefined for sigma <= 0");
    if (signal_power <= 0.0) throw DomainError("snr undefined for non-positive signal power");
    return 10.0 * std::log10(signal_power / (sigma * sigma));
}

double mean_square(const Matrix& m) {
    if (m.size() == 0) throw DomainError("mean_square of an empty matrix");
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m.data()[i] * m.data()[i];
    return s / static_cast<double>(m.size());
}

}  // namespace lstmcs
